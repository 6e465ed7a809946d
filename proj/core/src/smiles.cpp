#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mevo/data.hpp"
#include "mevo/molgraph.hpp"

namespace mevo {

namespace {

// Whether an aromatic atom must receive one endocyclic double bond during
// kekulization.  `sigma` counts heavy neighbours plus fixed hydrogens and
// `has_exo_double` marks an explicit non-aromatic double bond at the atom.
bool aromatic_double_needed(Element element, int charge, int sigma,
                            bool has_exo_double) {
  if (has_exo_double) return false;
  switch (element) {
    case Element::C:
      return charge == 0;
    case Element::N:
    case Element::P:
      if (charge > 0) return sigma <= 3;
      if (charge < 0) return false;
      return sigma <= 2;
    case Element::O:
    case Element::S:
      return charge > 0;
    default:
      return false;
  }
}

struct PendingBond {
  char symbol = 0;  // 0 = unspecified
};

struct RingSlot {
  int atom = -1;
  char symbol = 0;
  std::size_t position = 0;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  MolGraph run() {
    parse_body();
    if (!branch_stack_.empty()) {
      throw ParseError("unclosed branch", text_.size());
    }
    if (!ring_slots_.empty()) {
      throw ParseError("unclosed ring bond", ring_slots_.begin()->second.position);
    }
    resolve_aromatic_bonds();
    kekulize();
    graph_.finalize();
    validate_valence();
    perceive(graph_);
    return std::move(graph_);
  }

 private:
  void parse_body() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t') {
        ++pos_;
      } else if (c == '(') {
        if (prev_ < 0) throw ParseError("branch before any atom", pos_);
        branch_stack_.push_back(prev_);
        ++pos_;
      } else if (c == ')') {
        if (branch_stack_.empty()) throw ParseError("unmatched ')'", pos_);
        prev_ = branch_stack_.back();
        branch_stack_.pop_back();
        ++pos_;
      } else if (c == '.') {
        prev_ = -1;
        pending_.symbol = 0;
        ++pos_;
      } else if (c == '-' || c == '=' || c == '#' || c == ':') {
        pending_.symbol = c;
        ++pos_;
      } else if (c == '/' || c == '\\') {
        warn_once(stereo_warned_, "stereo bond ignored");
        pending_.symbol = '-';
        ++pos_;
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
        parse_ring_closure();
      } else if (c == '[') {
        parse_bracket_atom();
      } else {
        parse_organic_atom();
      }
    }
  }

  void parse_organic_atom() {
    const std::size_t at = pos_;
    const char c = text_[pos_];
    Element element;
    bool aromatic = false;
    if (c == 'C' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'l') {
      element = Element::Cl;
      pos_ += 2;
    } else if (c == 'B' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'r') {
      element = Element::Br;
      pos_ += 2;
    } else {
      switch (c) {
        case 'B': element = Element::B; break;
        case 'C': element = Element::C; break;
        case 'N': element = Element::N; break;
        case 'O': element = Element::O; break;
        case 'P': element = Element::P; break;
        case 'S': element = Element::S; break;
        case 'F': element = Element::F; break;
        case 'I': element = Element::I; break;
        case 'b': element = Element::B; aromatic = true; break;
        case 'c': element = Element::C; aromatic = true; break;
        case 'n': element = Element::N; aromatic = true; break;
        case 'o': element = Element::O; aromatic = true; break;
        case 'p': element = Element::P; aromatic = true; break;
        case 's': element = Element::S; aromatic = true; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", pos_);
      }
      ++pos_;
    }
    place_atom(element, 0, -1, aromatic, at);
  }

  void parse_bracket_atom() {
    const std::size_t at = pos_;
    ++pos_;  // '['
    if (pos_ >= text_.size()) throw ParseError("unterminated bracket atom", at);
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      warn_once(isotope_warned_, "isotope label ignored");
      ++pos_;
    }
    if (pos_ >= text_.size()) throw ParseError("unterminated bracket atom", at);

    bool aromatic = false;
    std::string symbol;
    char c = text_[pos_];
    if (std::islower(static_cast<unsigned char>(c))) {
      aromatic = true;
      symbol = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      ++pos_;
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      symbol = c;
      ++pos_;
      if (pos_ < text_.size() && std::islower(static_cast<unsigned char>(text_[pos_])) &&
          text_[pos_] != 'b' && text_[pos_] != 'c' && text_[pos_] != 'n' &&
          text_[pos_] != 'o' && text_[pos_] != 'p' && text_[pos_] != 's') {
        symbol += text_[pos_];
        ++pos_;
      }
    } else {
      throw ParseError("expected element symbol in bracket", pos_);
    }
    auto element = element_from_symbol(symbol);
    if (!element) throw ParseError("unsupported element '" + symbol + "'", at);

    while (pos_ < text_.size() && text_[pos_] == '@') {
      warn_once(stereo_warned_, "stereo centre ignored");
      ++pos_;
    }

    int hydrogens = 0;
    if (pos_ < text_.size() && text_[pos_] == 'H') {
      ++pos_;
      hydrogens = 1;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        hydrogens = text_[pos_] - '0';
        ++pos_;
      }
    }

    int charge = 0;
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      const int sign = text_[pos_] == '+' ? 1 : -1;
      ++pos_;
      int magnitude = 1;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        magnitude = text_[pos_] - '0';
        ++pos_;
      } else {
        while (pos_ < text_.size() && text_[pos_] == (sign > 0 ? '+' : '-')) {
          ++magnitude;
          ++pos_;
        }
      }
      charge = sign * magnitude;
    }
    if (pos_ < text_.size() && text_[pos_] == ':') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
    }
    if (pos_ >= text_.size() || text_[pos_] != ']') {
      throw ParseError("expected ']'", pos_);
    }
    ++pos_;
    place_atom(*element, charge, hydrogens, aromatic, at);
  }

  void place_atom(Element element, int charge, int fixed_h, bool aromatic,
                  std::size_t at) {
    if (charge < -1 || charge > 1) {
      throw ParseError("charge outside supported range [-1, +1]", at);
    }
    const int index = graph_.add_atom(element, charge);
    Atom& atom = graph_.atom(index);
    atom.aromatic = aromatic;
    if (fixed_h >= 0) {
      atom.fixed_h = true;
      atom.implicit_h = static_cast<std::uint8_t>(fixed_h);
    }
    if (prev_ >= 0) add_parsed_bond(prev_, index, pending_.symbol, at);
    pending_.symbol = 0;
    prev_ = index;
  }

  void parse_ring_closure() {
    const std::size_t at = pos_;
    int number;
    if (text_[pos_] == '%') {
      if (pos_ + 2 >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_ + 2]))) {
        throw ParseError("malformed %nn ring closure", pos_);
      }
      number = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
      pos_ += 3;
    } else {
      number = text_[pos_] - '0';
      ++pos_;
    }
    if (prev_ < 0) throw ParseError("ring closure before any atom", at);

    auto it = ring_slots_.find(number);
    if (it == ring_slots_.end()) {
      ring_slots_[number] = RingSlot{prev_, pending_.symbol, at};
    } else {
      RingSlot slot = it->second;
      ring_slots_.erase(it);
      char symbol = slot.symbol;
      if (pending_.symbol != 0) {
        if (symbol != 0 && symbol != pending_.symbol) {
          throw ParseError("conflicting ring bond symbols", at);
        }
        symbol = pending_.symbol;
      }
      add_parsed_bond(slot.atom, prev_, symbol, at);
    }
    pending_.symbol = 0;
  }

  void add_parsed_bond(int a, int b, char symbol, std::size_t at) {
    int order = 1;
    bool aromatic = false;
    switch (symbol) {
      case 0:
        aromatic = graph_.atom(a).aromatic && graph_.atom(b).aromatic;
        break;
      case '-': break;
      case '=': order = 2; break;
      case '#': order = 3; break;
      case ':': aromatic = true; break;
      default:
        throw ParseError("unsupported bond symbol", at);
    }
    try {
      graph_.add_bond(a, b, order, aromatic);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), at);
    }
  }

  // Aromatic bonds are tentative until ring perception: outside any ring the
  // implicit "aromatic atom to aromatic atom" bond is really a single bond
  // (the biphenyl linker case).
  void resolve_aromatic_bonds() {
    MolGraph& m = graph_;
    m.set_rings(compute_rings(m));
    for (int b = 0; b < m.bond_count(); ++b) {
      if (m.bond(b).aromatic && !m.bond(b).in_ring) {
        m.bond(b).aromatic = false;
      }
    }
  }

  void kekulize() {
    MolGraph& m = graph_;
    std::vector<bool> needs(static_cast<std::size_t>(m.atom_count()), false);
    bool any = false;
    for (int i = 0; i < m.atom_count(); ++i) {
      const Atom& a = m.atom(i);
      if (!a.aromatic) continue;
      bool exo_double = false;
      for (const auto& [nbr, bond_index] : m.neighbors(i)) {
        const Bond& bond = m.bond(bond_index);
        if (!bond.aromatic && bond.order == 2) exo_double = true;
      }
      const int sigma = m.degree(i) + (a.fixed_h ? a.implicit_h : 0);
      needs[static_cast<std::size_t>(i)] =
          aromatic_double_needed(a.element, a.charge, sigma, exo_double);
      any = any || needs[static_cast<std::size_t>(i)];
    }
    if (!any) return;

    std::vector<int> match(static_cast<std::size_t>(m.atom_count()), -1);
    if (!match_doubles(0, needs, match)) {
      throw ParseError("kekulization failed", 0);
    }
    for (int i = 0; i < m.atom_count(); ++i) {
      const int j = match[static_cast<std::size_t>(i)];
      if (j > i) {
        const int bond_index = m.bond_between(i, j);
        m.bond(bond_index).order = 2;
      }
    }
  }

  bool match_doubles(int from, const std::vector<bool>& needs,
                     std::vector<int>& match) {
    MolGraph& m = graph_;
    int u = -1;
    for (int i = from; i < m.atom_count(); ++i) {
      if (needs[static_cast<std::size_t>(i)] && match[static_cast<std::size_t>(i)] < 0) {
        u = i;
        break;
      }
    }
    if (u < 0) return true;
    for (const auto& [v, bond_index] : m.neighbors(u)) {
      if (!m.bond(bond_index).aromatic) continue;
      if (!needs[static_cast<std::size_t>(v)] || match[static_cast<std::size_t>(v)] >= 0) {
        continue;
      }
      match[static_cast<std::size_t>(u)] = v;
      match[static_cast<std::size_t>(v)] = u;
      if (match_doubles(u + 1, needs, match)) return true;
      match[static_cast<std::size_t>(u)] = -1;
      match[static_cast<std::size_t>(v)] = -1;
    }
    return false;
  }

  void validate_valence() {
    const ValenceTable& table = ValenceTable::standard();
    for (int i = 0; i < graph_.atom_count(); ++i) {
      const Atom& a = graph_.atom(i);
      const int sum = graph_.bond_order_sum(i) + a.implicit_h;
      if (sum > table.capacity(a.element, a.charge)) {
        throw ParseError("valence violation at atom " + std::to_string(i), 0);
      }
    }
  }

  void warn_once(bool& flag, const char* message) {
    if (!flag) {
      log_warn(std::string(message) + " while parsing SMILES");
      flag = true;
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  MolGraph graph_;
  int prev_ = -1;
  PendingBond pending_;
  std::vector<int> branch_stack_;
  std::map<int, RingSlot> ring_slots_;
  bool stereo_warned_ = false;
  bool isotope_warned_ = false;
};

// ---------------------------------------------------------------------------
// Canonical writer.

struct Closure {
  int bond = -1;
  int partner = -1;
  int digit = -1;
  bool opened = false;
};

class Writer {
 public:
  explicit Writer(const MolGraph& m) : m_(m), ranks_(canonical_ranks(m)) {}

  std::string run() {
    visited_.assign(static_cast<std::size_t>(m_.atom_count()), false);
    tree_edge_.assign(static_cast<std::size_t>(m_.bond_count()), false);
    closures_.assign(static_cast<std::size_t>(m_.atom_count()), {});

    std::vector<std::string> fragments;
    while (true) {
      int start = -1;
      for (int i = 0; i < m_.atom_count(); ++i) {
        if (visited_[static_cast<std::size_t>(i)]) continue;
        if (start < 0 || ranks_[static_cast<std::size_t>(i)] <
                             ranks_[static_cast<std::size_t>(start)]) {
          start = i;
        }
      }
      if (start < 0) break;
      classify(start, -1);
      fragments.push_back(render(start, -1));
    }
    std::sort(fragments.begin(), fragments.end());
    std::string out;
    for (std::size_t i = 0; i < fragments.size(); ++i) {
      if (i > 0) out += '.';
      out += fragments[i];
    }
    return out;
  }

 private:
  std::vector<std::pair<int, int>> ordered_neighbors(int u) const {
    std::vector<std::pair<int, int>> nbrs = m_.neighbors(u);
    std::sort(nbrs.begin(), nbrs.end(), [&](const auto& x, const auto& y) {
      return ranks_[static_cast<std::size_t>(x.first)] <
             ranks_[static_cast<std::size_t>(y.first)];
    });
    return nbrs;
  }

  void classify(int u, int parent_bond) {
    visited_[static_cast<std::size_t>(u)] = true;
    for (const auto& [v, bond_index] : ordered_neighbors(u)) {
      if (bond_index == parent_bond || tree_edge_[static_cast<std::size_t>(bond_index)]) {
        continue;
      }
      if (visited_[static_cast<std::size_t>(v)]) {
        if (!closure_known(bond_index)) {
          closures_[static_cast<std::size_t>(u)].push_back(
              Closure{bond_index, v, -1, false});
          closures_[static_cast<std::size_t>(v)].push_back(
              Closure{bond_index, u, -1, false});
        }
      } else {
        tree_edge_[static_cast<std::size_t>(bond_index)] = true;
        classify(v, bond_index);
      }
    }
  }

  bool closure_known(int bond_index) const {
    for (const auto& per_atom : closures_) {
      for (const Closure& c : per_atom) {
        if (c.bond == bond_index) return true;
      }
    }
    return false;
  }

  std::string render(int u, int incoming_bond) {
    std::string out = atom_text(u);
    for (Closure& c : closures_[static_cast<std::size_t>(u)]) {
      Closure* mirror = find_closure(c.partner, c.bond);
      if (!c.opened && !mirror->opened) {
        c.digit = allocate_digit();
        mirror->digit = c.digit;
        c.opened = true;
        out += bond_text(c.bond, u, c.partner);
        out += digit_text(c.digit);
      } else if (!c.opened) {
        c.opened = true;
        release_digit(c.digit);
        out += digit_text(c.digit);
      }
    }
    std::vector<std::pair<int, int>> children;
    for (const auto& [v, bond_index] : ordered_neighbors(u)) {
      if (bond_index != incoming_bond && tree_edge_[static_cast<std::size_t>(bond_index)]) {
        children.emplace_back(v, bond_index);
      }
    }
    for (std::size_t i = 0; i < children.size(); ++i) {
      const auto& [v, bond_index] = children[i];
      const std::string sub = bond_text(bond_index, u, v) + render(v, bond_index);
      if (i + 1 < children.size()) {
        out += '(';
        out += sub;
        out += ')';
      } else {
        out += sub;
      }
    }
    return out;
  }

  Closure* find_closure(int atom, int bond_index) {
    for (Closure& c : closures_[static_cast<std::size_t>(atom)]) {
      if (c.bond == bond_index) return &c;
    }
    return nullptr;
  }

  int allocate_digit() {
    for (int d = 1; d < 100; ++d) {
      if (!digit_used_[d]) {
        digit_used_[d] = true;
        return d;
      }
    }
    throw std::runtime_error("ring closure digits exhausted");
  }

  void release_digit(int d) { digit_used_[d] = false; }

  static std::string digit_text(int d) {
    if (d < 10) return std::string(1, static_cast<char>('0' + d));
    return "%" + std::to_string(d);
  }

  std::string bond_text(int bond_index, int from, int to) const {
    const Bond& b = m_.bond(bond_index);
    if (b.aromatic) return "";
    switch (b.order) {
      case 1:
        return (m_.atom(from).aromatic && m_.atom(to).aromatic) ? "-" : "";
      case 2: return "=";
      case 3: return "#";
      default: return "";
    }
  }

  // Hydrogen count the parser would derive for the unbracketed spelling; a
  // bracket is required whenever that differs from the actual count.
  int predicted_h(int u) const {
    const Atom& a = m_.atom(u);
    int sum = 0;
    int aromatic_bonds = 0;
    bool exo_double = false;
    for (const auto& [nbr, bond_index] : m_.neighbors(u)) {
      const Bond& b = m_.bond(bond_index);
      if (b.aromatic) {
        ++aromatic_bonds;
      } else {
        sum += b.order;
        if (b.order == 2) exo_double = true;
      }
    }
    if (a.aromatic) {
      sum += aromatic_bonds;
      if (aromatic_double_needed(a.element, 0, m_.degree(u), exo_double)) ++sum;
    }
    auto valence = ValenceTable::standard().implicit_valence(a.element, 0, sum);
    const int h = valence ? *valence - sum : 0;
    return h < 0 ? 0 : h;
  }

  std::string atom_text(int u) const {
    const Atom& a = m_.atom(u);
    std::string symbol(element_symbol(a.element));
    if (a.aromatic) {
      for (char& c : symbol) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    const ElementInfo* info = ValenceTable::standard().info(a.element);
    const bool plain = a.charge == 0 && info != nullptr && info->organic_subset &&
                       predicted_h(u) == a.implicit_h;
    if (plain) return symbol;
    std::string out = "[" + symbol;
    if (a.implicit_h == 1) {
      out += 'H';
    } else if (a.implicit_h > 1) {
      out += 'H';
      out += std::to_string(static_cast<int>(a.implicit_h));
    }
    if (a.charge > 0) {
      out += '+';
      if (a.charge > 1) out += std::to_string(static_cast<int>(a.charge));
    } else if (a.charge < 0) {
      out += '-';
      if (a.charge < -1) out += std::to_string(-static_cast<int>(a.charge));
    }
    out += ']';
    return out;
  }

  const MolGraph& m_;
  std::vector<int> ranks_;
  std::vector<bool> visited_;
  std::vector<bool> tree_edge_;
  std::vector<std::vector<Closure>> closures_;
  bool digit_used_[100] = {};
};

}  // namespace

MolGraph parse_smiles(const std::string& smiles) {
  Parser parser(smiles);
  return parser.run();
}

std::string write_smiles(const MolGraph& m) {
  if (m.empty()) return "";
  if (!m.perceived()) {
    return write_smiles(perceived_copy(m));
  }
  Writer writer(m);
  return writer.run();
}

}  // namespace mevo
