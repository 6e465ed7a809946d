#include <map>
#include <string>

#include "mevo/data.hpp"
#include "mevo/descriptors.hpp"

namespace mevo {

namespace {

struct PolarEnv {
  int h = 0;
  int singles = 0;   // non-aromatic single bonds to heavy atoms
  int doubles = 0;   // non-aromatic double bonds
  int triples = 0;
  int aromatic = 0;  // aromatic bonds
  bool in_3ring = false;
};

PolarEnv scan(const MolGraph& m, int i) {
  PolarEnv env;
  env.h = m.total_h(i);
  for (const auto& [nbr, bond] : m.neighbors(i)) {
    const Atom& na = m.atom(nbr);
    const Bond& b = m.bond(bond);
    if (na.element == Element::H) continue;
    if (b.aromatic) {
      ++env.aromatic;
    } else if (b.order == 1) {
      ++env.singles;
    } else if (b.order == 2) {
      ++env.doubles;
    } else {
      ++env.triples;
    }
  }
  for (const Ring& ring : m.rings()) {
    if (ring.atoms.size() == 3) {
      for (int a : ring.atoms) {
        if (a == i) env.in_3ring = true;
      }
    }
  }
  return env;
}

std::string nitrogen_row(const Atom& a, const PolarEnv& e) {
  if (a.aromatic) {
    if (a.charge > 0) {
      if (e.h > 0) return "n_plus_h";
      return "n_plus_sub";
    }
    if (e.h > 0) return "n_aromatic_h";
    if (e.doubles > 0) return "n_aromatic_oxide";
    if (e.singles > 0) return "n_aromatic_sub";
    if (e.aromatic >= 3) return "n_aromatic_fused";
    return "n_aromatic";
  }
  if (a.charge > 0) {
    if (e.h >= 3) return "NH3_plus";
    if (e.h == 2) return e.doubles > 0 ? "NH2_plus_imine" : "NH2_plus";
    if (e.h == 1) return e.doubles > 0 ? "NH_plus_imine" : "NH_plus";
    if (e.triples > 0) return "N_plus_nitrilium";
    return e.doubles > 0 ? "N_plus_imine" : "N_plus_quat";
  }
  if (e.triples > 0) return "N_nitrile";
  if (e.doubles >= 2) return "N_nitro";
  if (e.doubles == 1) return e.h > 0 ? "NH_imine" : "N_imine_sub";
  if (e.h >= 2) return "NH2_amine";
  if (e.h == 1) return e.in_3ring ? "NH_amine_3ring" : "NH_amine";
  return e.in_3ring ? "N_amine_3ring" : "N_amine";
}

std::string oxygen_row(const Atom& a, const PolarEnv& e) {
  if (a.aromatic) return "o_aromatic";
  if (a.charge < 0) return "O_anion";
  if (e.h > 0) return "O_hydroxyl";
  if (e.doubles > 0) return "O_double";
  return e.in_3ring ? "O_ether_3ring" : "O_ether";
}

const std::map<std::string, double>& contributions() {
  static const std::map<std::string, double> table = [] {
    std::map<std::string, double> out;
    const std::string path = data_path("tpsa.tsv");
    verify_table_checksum(path);
    for (const std::string& line : read_table_lines(path)) {
      const std::size_t tab = line.find('\t');
      if (tab == std::string::npos) continue;
      out[line.substr(0, tab)] = std::stod(line.substr(tab + 1));
    }
    return out;
  }();
  return table;
}

}  // namespace

std::string tpsa_atom_type(const MolGraph& m, int atom) {
  const Atom& a = m.atom(atom);
  if (a.element == Element::N) return nitrogen_row(a, scan(m, atom));
  if (a.element == Element::O) return oxygen_row(a, scan(m, atom));
  return "";
}

double tpsa(const MolGraph& m) {
  MolGraph storage;
  const MolGraph* g = &m;
  if (!m.perceived()) {
    storage = perceived_copy(m);
    g = &storage;
  }
  double total = 0.0;
  for (int i = 0; i < g->atom_count(); ++i) {
    const std::string row = tpsa_atom_type(*g, i);
    if (row.empty()) continue;
    const auto& table = contributions();
    auto it = table.find(row);
    if (it == table.end()) {
      log_warn("tpsa row " + row + " missing; contributing 0");
      continue;
    }
    total += it->second;
  }
  return total;
}

}  // namespace mevo
