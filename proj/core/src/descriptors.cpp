#include "mevo/descriptors.hpp"

#include <stdexcept>

#include "mevo/data.hpp"

namespace mevo {

namespace {

int heavy_degree(const MolGraph& m, int i) {
  int count = 0;
  for (const auto& [nbr, bond] : m.neighbors(i)) {
    (void)bond;
    if (m.atom(nbr).element != Element::H) ++count;
  }
  return count;
}

bool is_amide_cn(const MolGraph& m, const Bond& b) {
  // Single C-N bond where the carbon carries a double-bonded oxygen.
  for (int c : {static_cast<int>(b.a), static_cast<int>(b.b)}) {
    const int n = static_cast<int>(b.a) == c ? static_cast<int>(b.b)
                                             : static_cast<int>(b.a);
    if (m.atom(c).element != Element::C || m.atom(n).element != Element::N) {
      continue;
    }
    for (const auto& [nbr, bond] : m.neighbors(c)) {
      const Bond& cb = m.bond(bond);
      if (m.atom(nbr).element == Element::O && !cb.aromatic && cb.order == 2) {
        return true;
      }
    }
  }
  return false;
}

const MolGraph& ensure_perceived(const MolGraph& m, MolGraph& storage) {
  if (m.perceived()) return m;
  storage = perceived_copy(m);
  return storage;
}

}  // namespace

double molecular_weight(const MolGraph& m) {
  double total = 0.0;
  for (int i = 0; i < m.atom_count(); ++i) {
    const Atom& a = m.atom(i);
    total += element_mass(a.element);
    total += element_mass(Element::H) * a.implicit_h;
  }
  return total;
}

int hbd(const MolGraph& m) {
  int count = 0;
  for (int i = 0; i < m.atom_count(); ++i) {
    const Element e = m.atom(i).element;
    if (e == Element::N || e == Element::O) count += m.total_h(i);
  }
  return count;
}

int hba(const MolGraph& m) {
  MolGraph storage;
  const MolGraph& g = ensure_perceived(m, storage);
  int count = 0;
  for (int i = 0; i < g.atom_count(); ++i) {
    const Atom& a = g.atom(i);
    if (a.element == Element::N) {
      // Pyrrole-type aromatic nitrogen donates its lone pair into the ring.
      if (a.aromatic && heavy_degree(g, i) + g.total_h(i) >= 3) continue;
      ++count;
    } else if (a.element == Element::O) {
      // Amide carbonyl oxygen is conventionally excluded.
      bool amide = false;
      for (const auto& [nbr, bond] : g.neighbors(i)) {
        const Bond& b = g.bond(bond);
        if (b.aromatic || b.order != 2) continue;
        if (g.atom(nbr).element != Element::C) continue;
        for (const auto& [nn, nb] : g.neighbors(nbr)) {
          (void)nb;
          if (nn != i && g.atom(nn).element == Element::N) amide = true;
        }
      }
      if (!amide) ++count;
    }
  }
  return count;
}

int rotatable_bonds(const MolGraph& m) {
  MolGraph storage;
  const MolGraph& g = ensure_perceived(m, storage);
  int count = 0;
  for (int bi = 0; bi < g.bond_count(); ++bi) {
    const Bond& b = g.bond(bi);
    if (b.in_ring || b.aromatic || b.order != 1) continue;
    const int a = static_cast<int>(b.a);
    const int c = static_cast<int>(b.b);
    if (g.atom(a).element == Element::H || g.atom(c).element == Element::H) continue;
    if (heavy_degree(g, a) < 2 || heavy_degree(g, c) < 2) continue;
    if (is_amide_cn(g, b)) continue;
    ++count;
  }
  return count;
}

int aromatic_ring_count(const MolGraph& m) {
  MolGraph storage;
  const MolGraph& g = ensure_perceived(m, storage);
  int count = 0;
  for (const Ring& ring : g.rings()) {
    bool all_aromatic = !ring.atoms.empty();
    for (int a : ring.atoms) {
      if (!g.atom(a).aromatic) all_aromatic = false;
    }
    if (all_aromatic) ++count;
  }
  return count;
}

int ring_count(const MolGraph& m) {
  MolGraph storage;
  const MolGraph& g = ensure_perceived(m, storage);
  return static_cast<int>(g.rings().size());
}

int heavy_atom_count(const MolGraph& m) {
  int count = 0;
  for (int i = 0; i < m.atom_count(); ++i) {
    if (m.atom(i).element != Element::H) ++count;
  }
  return count;
}

int fluorine_count(const MolGraph& m) {
  int count = 0;
  for (int i = 0; i < m.atom_count(); ++i) {
    if (m.atom(i).element == Element::F) ++count;
  }
  return count;
}

int alert_count(const MolGraph& m, const std::vector<Pattern>& patterns) {
  MolGraph storage;
  const MolGraph& g = ensure_perceived(m, storage);
  int count = 0;
  for (const Pattern& p : patterns) {
    if (has_match(g, p)) ++count;
  }
  return count;
}

const std::vector<Pattern>& default_alerts() {
  static const std::vector<Pattern> patterns =
      load_patterns(data_path("alerts.tsv"));
  return patterns;
}

int alert_count(const MolGraph& m) { return alert_count(m, default_alerts()); }

DescriptorVector compute_descriptors(const MolGraph& m) {
  MolGraph storage;
  const MolGraph& g = ensure_perceived(m, storage);
  DescriptorVector d;
  d.mw = molecular_weight(g);
  d.logp = crippen_logp(g);
  d.tpsa = tpsa(g);
  d.hbd = hbd(g);
  d.hba = hba(g);
  d.rotatable_bonds = rotatable_bonds(g);
  d.aromatic_rings = aromatic_ring_count(g);
  d.rings = ring_count(g);
  d.heavy_atoms = heavy_atom_count(g);
  d.alerts = alert_count(g);
  return d;
}

double descriptor_value(const MolGraph& m, const DescriptorVector& d,
                        const std::string& name) {
  if (name == "mw" || name == "molw") return d.mw;
  if (name == "logp") return d.logp;
  if (name == "tpsa") return d.tpsa;
  if (name == "hbd") return d.hbd;
  if (name == "hba") return d.hba;
  if (name == "rtb" || name == "rotatable_bonds") return d.rotatable_bonds;
  if (name == "ar" || name == "aromatic_rings") return d.aromatic_rings;
  if (name == "rings") return d.rings;
  if (name == "heavy_atoms") return d.heavy_atoms;
  if (name == "alerts") return d.alerts;
  if (name == "fluorine_count") return fluorine_count(m);
  throw std::invalid_argument("unknown descriptor name: " + name);
}

}  // namespace mevo
