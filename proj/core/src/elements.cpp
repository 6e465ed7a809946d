#include "mevo/elements.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace mevo {

namespace {

std::vector<ElementInfo> standard_rows() {
  // Standard atomic weights (CIAAW 2021, conventional values) and the usual
  // organic valence models.  Capacity is the hard bonding ceiling used while
  // deriving molecules from token strings (S and P get their hypervalent
  // maxima so sulfones and phosphates stay reachable).
  return {
      {Element::H, "H", 1.008, {1}, 1, false, false},
      {Element::B, "B", 10.811, {3}, 3, true, true},
      {Element::C, "C", 12.011, {4}, 4, true, true},
      {Element::N, "N", 14.007, {3}, 3, true, true},
      {Element::O, "O", 15.999, {2}, 2, true, true},
      {Element::F, "F", 18.998, {1}, 1, true, false},
      {Element::P, "P", 30.974, {3, 5}, 5, true, true},
      {Element::S, "S", 32.066, {2, 4, 6}, 6, true, true},
      {Element::Cl, "Cl", 35.453, {1}, 1, true, false},
      {Element::Br, "Br", 79.904, {1}, 1, true, false},
      {Element::I, "I", 126.904, {1}, 1, true, false},
  };
}

// Charge shifts the effective bonding capacity.  Nitrogen-like elements gain
// capacity when protonated (ammonium) and lose it as anions; carbon loses a
// bond either way (carbocation/carbanion); boron mirrors carbon's cation side
// and gains a bond as borate.
int charge_adjusted(int base, Element e, int charge) {
  if (charge == 0) return base;
  int adjusted = base;
  switch (e) {
    case Element::N:
    case Element::O:
    case Element::P:
    case Element::S:
    case Element::F:
    case Element::Cl:
    case Element::Br:
    case Element::I:
      adjusted = base + charge;
      break;
    case Element::C:
      adjusted = base - (charge < 0 ? -charge : charge);
      break;
    case Element::B:
      adjusted = base - charge;
      break;
    case Element::H:
      adjusted = base - (charge < 0 ? -charge : charge);
      break;
  }
  return adjusted < 0 ? 0 : adjusted;
}

}  // namespace

const ValenceTable& ValenceTable::standard() {
  static const ValenceTable table = [] {
    ValenceTable t;
    t.rows_ = standard_rows();
    return t;
  }();
  return table;
}

ValenceTable ValenceTable::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("valence table not readable: " + path);
  ValenceTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string symbol, valences;
    int atomic_number = 0, capacity = 0, organic = 0, aromatic = 0;
    double mass = 0.0;
    if (!(row >> symbol >> atomic_number >> mass >> valences >> capacity >>
          organic >> aromatic)) {
      throw std::runtime_error("malformed valence row: " + line);
    }
    ElementInfo info{static_cast<Element>(atomic_number), "", mass, {},
                     capacity, organic != 0, aromatic != 0};
    // Symbols must outlive the table; resolve against the static names.
    auto elem = element_from_symbol(symbol);
    if (!elem || *elem != info.element) {
      throw std::runtime_error("unknown element symbol: " + symbol);
    }
    info.symbol = element_symbol(*elem);
    std::istringstream vals(valences);
    std::string v;
    while (std::getline(vals, v, ',')) info.valences.push_back(std::stoi(v));
    table.rows_.push_back(std::move(info));
  }
  if (table.rows_.empty()) throw std::runtime_error("empty valence table: " + path);
  return table;
}

const ElementInfo* ValenceTable::info(Element e) const {
  for (const auto& row : rows_) {
    if (row.element == e) return &row;
  }
  return nullptr;
}

const ElementInfo* ValenceTable::info(std::string_view symbol) const {
  for (const auto& row : rows_) {
    if (row.symbol == symbol) return &row;
  }
  return nullptr;
}

int ValenceTable::capacity(Element e, int charge) const {
  const ElementInfo* row = info(e);
  if (row == nullptr) return 0;
  return charge_adjusted(row->capacity, e, charge);
}

std::optional<int> ValenceTable::implicit_valence(Element e, int charge,
                                                  int bond_sum) const {
  const ElementInfo* row = info(e);
  if (row == nullptr) return std::nullopt;
  for (int v : row->valences) {
    int adjusted = charge_adjusted(v, e, charge);
    if (adjusted >= bond_sum) return adjusted;
  }
  return std::nullopt;
}

std::optional<Element> element_from_symbol(std::string_view symbol) {
  static const std::unordered_map<std::string_view, Element> map = {
      {"H", Element::H},   {"B", Element::B},   {"C", Element::C},
      {"N", Element::N},   {"O", Element::O},   {"F", Element::F},
      {"P", Element::P},   {"S", Element::S},   {"Cl", Element::Cl},
      {"Br", Element::Br}, {"I", Element::I},
  };
  auto it = map.find(symbol);
  if (it == map.end()) return std::nullopt;
  return it->second;
}

std::string_view element_symbol(Element e) {
  switch (e) {
    case Element::H: return "H";
    case Element::B: return "B";
    case Element::C: return "C";
    case Element::N: return "N";
    case Element::O: return "O";
    case Element::F: return "F";
    case Element::P: return "P";
    case Element::S: return "S";
    case Element::Cl: return "Cl";
    case Element::Br: return "Br";
    case Element::I: return "I";
  }
  return "?";
}

double element_mass(Element e) {
  const ElementInfo* row = ValenceTable::standard().info(e);
  return row != nullptr ? row->mass : 0.0;
}

}  // namespace mevo
