#include <map>
#include <string>

#include "mevo/data.hpp"
#include "mevo/descriptors.hpp"

namespace mevo {

namespace {

bool is_hetero(Element e) {
  return e != Element::C && e != Element::H;
}

struct AtomEnv {
  int heavy_degree = 0;
  int h_count = 0;            // implicit + explicit
  int aromatic_bonds = 0;
  int double_bonds = 0;       // non-aromatic
  int triple_bonds = 0;
  bool hetero_neighbor = false;            // N,O,P,S,halogen neighbor
  bool aromatic_c_neighbor = false;        // via any bond
  bool aromatic_other_neighbor = false;    // aromatic non-carbon neighbor
  bool aliphatic_c_neighbor = false;
  bool double_to_hetero = false;
  bool double_to_carbon = false;
};

AtomEnv scan(const MolGraph& m, int i) {
  AtomEnv env;
  env.h_count = m.total_h(i);
  for (const auto& [nbr, bond] : m.neighbors(i)) {
    const Atom& na = m.atom(nbr);
    const Bond& b = m.bond(bond);
    if (na.element == Element::H) continue;
    ++env.heavy_degree;
    if (b.aromatic) {
      ++env.aromatic_bonds;
    } else if (b.order == 2) {
      ++env.double_bonds;
      if (is_hetero(na.element)) env.double_to_hetero = true;
      if (na.element == Element::C) env.double_to_carbon = true;
    } else if (b.order == 3) {
      ++env.triple_bonds;
    }
    if (is_hetero(na.element)) env.hetero_neighbor = true;
    if (na.aromatic) {
      if (na.element == Element::C) {
        env.aromatic_c_neighbor = true;
      } else {
        env.aromatic_other_neighbor = true;
      }
    } else if (na.element == Element::C) {
      env.aliphatic_c_neighbor = true;
    }
  }
  return env;
}

std::string carbon_type(const MolGraph& m, int i, const AtomEnv& env) {
  const Atom& a = m.atom(i);
  if (a.aromatic) {
    if (env.aromatic_bonds >= 3) return "C19";
    if (env.h_count > 0) return "C18";
    // Exactly one non-aromatic substituent.
    for (const auto& [nbr, bond] : m.neighbors(i)) {
      const Atom& na = m.atom(nbr);
      const Bond& b = m.bond(bond);
      if (b.aromatic || na.element == Element::H) continue;
      if (!b.aromatic && b.order >= 2) return "C25";
      switch (na.element) {
        case Element::F: return "C14";
        case Element::Cl: return "C15";
        case Element::Br: return "C16";
        case Element::I: return "C17";
        case Element::N: return "C22";
        case Element::O: return "C23";
        case Element::S: return "C24";
        case Element::C: return na.aromatic ? "C20" : "C21";
        default: return na.aromatic ? "C20" : "C13";
      }
    }
    return "C18";  // bare aromatic carbon (no substituent recorded)
  }
  if (env.triple_bonds > 0) return "C7";
  if (env.double_bonds > 0) {
    if (env.double_to_hetero) return "C5";
    if (env.aromatic_c_neighbor || env.aromatic_other_neighbor) return "C26";
    return "C6";
  }
  // sp3 carbon
  if (env.hetero_neighbor) return env.h_count >= 2 ? "C3" : "C4";
  if (env.aromatic_c_neighbor || env.aromatic_other_neighbor) {
    if (env.h_count == 3) return env.aromatic_c_neighbor ? "C8" : "C9";
    if (env.h_count == 2) return "C10";
    if (env.h_count == 1) return "C11";
    return "C12";
  }
  return env.heavy_degree <= 2 ? "C1" : "C2";
}

std::string nitrogen_type(const MolGraph& m, int i, const AtomEnv& env) {
  const Atom& a = m.atom(i);
  if (a.aromatic) return a.charge > 0 ? "N12" : "N11";
  if (a.charge > 0) return env.h_count > 0 ? "N10" : "N13";
  if (a.charge < 0) return "N14";
  if (env.triple_bonds > 0) return "N9";
  if (env.double_bonds > 0) return env.h_count > 0 ? "N5" : "N6";
  const bool aromatic_nb = env.aromatic_c_neighbor || env.aromatic_other_neighbor;
  if (env.h_count >= 2) return aromatic_nb ? "N3" : "N1";
  if (env.h_count == 1) return aromatic_nb ? "N4" : "N2";
  return aromatic_nb ? "N8" : "N7";
}

std::string oxygen_type(const MolGraph& m, int i, const AtomEnv& env) {
  const Atom& a = m.atom(i);
  if (a.aromatic) return "O1";
  if (a.charge < 0) {
    for (const auto& [nbr, bond] : m.neighbors(i)) {
      (void)bond;
      const Atom& na = m.atom(nbr);
      if (na.element == Element::N) return "O5";
      if (na.element == Element::C) {
        for (const auto& [nn, nb] : m.neighbors(nbr)) {
          const Bond& b2 = m.bond(nb);
          if (nn != i && m.atom(nn).element == Element::O && !b2.aromatic &&
              b2.order == 2) {
            return "O12";
          }
        }
      }
    }
    return "OS";
  }
  if (env.h_count > 0) return "O2";
  if (env.double_bonds > 0) {
    for (const auto& [nbr, bond] : m.neighbors(i)) {
      const Bond& b = m.bond(bond);
      if (b.aromatic || b.order != 2) continue;
      const Atom& na = m.atom(nbr);
      if (na.element == Element::N || na.element == Element::O ||
          na.element == Element::S || na.element == Element::P) {
        return "O5";
      }
      if (na.element == Element::C) return na.aromatic ? "O8" : "O9";
    }
    return "O9";
  }
  const bool aromatic_nb = env.aromatic_c_neighbor || env.aromatic_other_neighbor;
  return aromatic_nb ? "O4" : "O3";
}

const std::map<std::string, double>& contributions() {
  static const std::map<std::string, double> table = [] {
    std::map<std::string, double> out;
    const std::string path = data_path("crippen.tsv");
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

double lookup(const std::string& type, Element element) {
  const auto& table = contributions();
  auto it = table.find(type);
  if (it != table.end()) return it->second;
  // Graceful fallback to the element default so evaluation never aborts.
  static const std::map<Element, const char*> fallback = {
      {Element::C, "CS"}, {Element::N, "NS"}, {Element::O, "OS"},
      {Element::H, "HS"}};
  auto fb = fallback.find(element);
  if (fb != fallback.end()) {
    auto fit = table.find(fb->second);
    if (fit != table.end()) {
      log_warn("crippen type " + type + " missing; using fallback " +
               fb->second);
      return fit->second;
    }
  }
  log_warn("crippen type " + type + " missing; contributing 0");
  return 0.0;
}

}  // namespace

std::string crippen_atom_type(const MolGraph& m, int atom) {
  const Atom& a = m.atom(atom);
  const AtomEnv env = scan(m, atom);
  switch (a.element) {
    case Element::C: return carbon_type(m, atom, env);
    case Element::N: return nitrogen_type(m, atom, env);
    case Element::O: return oxygen_type(m, atom, env);
    case Element::S:
      if (a.aromatic) return "S3";
      return a.charge != 0 ? "S2" : "S1";
    case Element::P: return "P";
    case Element::F: return "F";
    case Element::Cl: return "Cl";
    case Element::Br: return "Br";
    case Element::I: return "I";
    case Element::B: return "BS";
    case Element::H:
      for (const auto& [nbr, bond] : m.neighbors(atom)) {
        (void)bond;
        if (m.atom(nbr).element != Element::H) {
          return crippen_hydrogen_type(m, nbr);
        }
      }
      return "HS";
  }
  return "CS";
}

std::string crippen_hydrogen_type(const MolGraph& m, int host_atom) {
  const Atom& host = m.atom(host_atom);
  switch (host.element) {
    case Element::C: return "H1";
    case Element::N: return "H3";
    case Element::O: {
      // Classify by what else the oxygen touches.
      for (const auto& [nbr, bond] : m.neighbors(host_atom)) {
        (void)bond;
        const Atom& na = m.atom(nbr);
        if (na.element == Element::H) continue;
        if (na.element == Element::N) return "H3";
        if (na.element == Element::O || na.element == Element::S) return "H4";
        if (na.element == Element::C) {
          const AtomEnv cenv = scan(m, nbr);
          if (!na.aromatic && (cenv.double_bonds > 0 || cenv.triple_bonds > 0)) {
            return "H4";  // acid / enol hydroxyl
          }
          return "H2";
        }
      }
      return "H2";
    }
    default: return "H2";  // H on S, P, B, halogen-adjacent oddities
  }
}

double crippen_logp(const MolGraph& m) {
  MolGraph storage;
  const MolGraph* g = &m;
  if (!m.perceived()) {
    storage = perceived_copy(m);
    g = &storage;
  }
  double total = 0.0;
  for (int i = 0; i < g->atom_count(); ++i) {
    const Atom& a = g->atom(i);
    if (a.element == Element::H) {
      // Explicit hydrogen typed by its heavy neighbor.
      std::string type = "HS";
      for (const auto& [nbr, bond] : g->neighbors(i)) {
        (void)bond;
        if (g->atom(nbr).element != Element::H) {
          type = crippen_hydrogen_type(*g, nbr);
          break;
        }
      }
      total += lookup(type, Element::H);
      continue;
    }
    total += lookup(crippen_atom_type(*g, i), a.element);
    if (a.implicit_h > 0) {
      total += a.implicit_h * lookup(crippen_hydrogen_type(*g, i), Element::H);
    }
  }
  return total;
}

}  // namespace mevo
