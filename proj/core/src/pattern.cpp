#include "mevo/pattern.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "mevo/data.hpp"

namespace mevo {

namespace {

bool eval_atom(const AtomExpr& e, const MolGraph& m, int i) {
  const Atom& a = m.atom(i);
  switch (e.kind) {
    case AtomExpr::Kind::True: return true;
    case AtomExpr::Kind::Element: return static_cast<int>(a.element) == e.value;
    case AtomExpr::Kind::ElementAliphatic:
      return static_cast<int>(a.element) == e.value && !a.aromatic;
    case AtomExpr::Kind::ElementAromatic:
      return static_cast<int>(a.element) == e.value && a.aromatic;
    case AtomExpr::Kind::Aromatic: return a.aromatic;
    case AtomExpr::Kind::Aliphatic: return !a.aromatic;
    case AtomExpr::Kind::InRing: return e.value == 0 ? !a.in_ring : a.in_ring;
    case AtomExpr::Kind::HCount: return m.total_h(i) == e.value;
    case AtomExpr::Kind::Degree: return m.degree(i) == e.value;
    case AtomExpr::Kind::Connections:
      return m.degree(i) + m.total_h(i) == e.value;
    case AtomExpr::Kind::Charge: return a.charge == e.value;
    case AtomExpr::Kind::Not: return !eval_atom(e.kids[0], m, i);
    case AtomExpr::Kind::And:
      for (const AtomExpr& k : e.kids) {
        if (!eval_atom(k, m, i)) return false;
      }
      return true;
    case AtomExpr::Kind::Or:
      for (const AtomExpr& k : e.kids) {
        if (eval_atom(k, m, i)) return true;
      }
      return false;
  }
  return false;
}

bool eval_bond(BondPred pred, const Bond& b) {
  switch (pred) {
    case BondPred::Default: return b.aromatic || b.order == 1;
    case BondPred::Single: return !b.aromatic && b.order == 1;
    case BondPred::Double: return !b.aromatic && b.order == 2;
    case BondPred::Triple: return !b.aromatic && b.order == 3;
    case BondPred::Aromatic: return b.aromatic;
    case BondPred::Any: return true;
  }
  return false;
}

class PatternParser {
 public:
  PatternParser(const std::string& text, const std::string& name)
      : text_(text), name_(name) {}

  Pattern run() {
    pattern_.name = name_;
    pattern_.smarts = text_;
    parse_body();
    if (!ring_slots_.empty()) {
      throw ParseError("unclosed ring closure in pattern", text_.size());
    }
    if (!branch_stack_.empty()) {
      throw ParseError("unclosed branch in pattern", text_.size());
    }
    if (pattern_.atoms.empty()) {
      throw ParseError("empty pattern", 0);
    }
    return std::move(pattern_);
  }

 private:
  void parse_body() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '(') {
        if (prev_ < 0) throw ParseError("branch before any pattern atom", pos_);
        branch_stack_.push_back(prev_);
        ++pos_;
      } else if (c == ')') {
        if (branch_stack_.empty()) throw ParseError("unmatched ')'", pos_);
        prev_ = branch_stack_.back();
        branch_stack_.pop_back();
        ++pos_;
      } else if (c == '-' || c == '=' || c == '#' || c == ':' || c == '~') {
        pending_ = bond_pred(c);
        has_pending_ = true;
        ++pos_;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        parse_ring_closure();
      } else if (c == '[') {
        parse_bracket();
      } else {
        parse_plain_atom();
      }
    }
  }

  static BondPred bond_pred(char c) {
    switch (c) {
      case '-': return BondPred::Single;
      case '=': return BondPred::Double;
      case '#': return BondPred::Triple;
      case ':': return BondPred::Aromatic;
      case '~': return BondPred::Any;
    }
    return BondPred::Default;
  }

  void parse_ring_closure() {
    const int number = text_[pos_] - '0';
    const std::size_t at = pos_;
    ++pos_;
    if (prev_ < 0) throw ParseError("ring closure before any atom", at);
    auto it = ring_slots_.find(number);
    if (it == ring_slots_.end()) {
      ring_slots_[number] = {prev_, has_pending_ ? pending_ : BondPred::Default,
                             has_pending_};
    } else {
      auto [atom, pred, explicit_pred] = it->second;
      ring_slots_.erase(it);
      BondPred resolved = BondPred::Default;
      if (explicit_pred) resolved = pred;
      if (has_pending_) resolved = pending_;
      pattern_.bonds.push_back({atom, prev_, resolved});
    }
    has_pending_ = false;
  }

  void parse_plain_atom() {
    const std::size_t at = pos_;
    const char c = text_[pos_];
    AtomExpr expr;
    if (c == '*') {
      expr.kind = AtomExpr::Kind::True;
      ++pos_;
    } else if (c == 'a') {
      expr.kind = AtomExpr::Kind::Aromatic;
      ++pos_;
    } else if (c == 'A') {
      expr.kind = AtomExpr::Kind::Aliphatic;
      ++pos_;
    } else {
      bool aromatic = false;
      std::string symbol;
      if (c == 'C' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'l') {
        symbol = "Cl";
        pos_ += 2;
      } else if (c == 'B' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'r') {
        symbol = "Br";
        pos_ += 2;
      } else if (std::isupper(static_cast<unsigned char>(c))) {
        symbol = c;
        ++pos_;
      } else if (std::islower(static_cast<unsigned char>(c))) {
        aromatic = true;
        symbol = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        ++pos_;
      } else {
        throw ParseError(std::string("unexpected pattern character '") + c + "'", at);
      }
      auto element = element_from_symbol(symbol);
      if (!element) throw ParseError("unsupported element in pattern", at);
      expr.kind = aromatic ? AtomExpr::Kind::ElementAromatic
                           : AtomExpr::Kind::ElementAliphatic;
      expr.value = static_cast<int>(*element);
    }
    place_atom(std::move(expr));
  }

  void parse_bracket() {
    ++pos_;  // '['
    AtomExpr expr = parse_or();
    if (pos_ >= text_.size() || text_[pos_] != ']') {
      throw ParseError("expected ']' in pattern", pos_);
    }
    ++pos_;
    place_atom(std::move(expr));
  }

  // ';' and ',' and '&'/implicit conjunction with SMARTS precedence
  // (! > & > , > ;).  ';' maps onto And as well.
  AtomExpr parse_or() {
    AtomExpr first = parse_and_weak();
    if (pos_ >= text_.size() || text_[pos_] != ';') return first;
    AtomExpr out;
    out.kind = AtomExpr::Kind::And;
    out.kids.push_back(std::move(first));
    while (pos_ < text_.size() && text_[pos_] == ';') {
      ++pos_;
      out.kids.push_back(parse_and_weak());
    }
    return out;
  }

  AtomExpr parse_and_weak() {
    AtomExpr first = parse_and();
    if (pos_ >= text_.size() || text_[pos_] != ',') return first;
    AtomExpr out;
    out.kind = AtomExpr::Kind::Or;
    out.kids.push_back(std::move(first));
    while (pos_ < text_.size() && text_[pos_] == ',') {
      ++pos_;
      out.kids.push_back(parse_and());
    }
    return out;
  }

  AtomExpr parse_and() {
    AtomExpr first = parse_not();
    if (pos_ >= text_.size() || !starts_primitive(text_[pos_])) return first;
    AtomExpr out;
    out.kind = AtomExpr::Kind::And;
    out.kids.push_back(std::move(first));
    while (pos_ < text_.size() && starts_primitive(text_[pos_])) {
      if (text_[pos_] == '&') ++pos_;
      out.kids.push_back(parse_not());
    }
    return out;
  }

  static bool starts_primitive(char c) {
    return c == '!' || c == '&' || c == '#' || c == '*' || c == '+' || c == '-' ||
           std::isalpha(static_cast<unsigned char>(c));
  }

  AtomExpr parse_not() {
    if (pos_ < text_.size() && text_[pos_] == '!') {
      ++pos_;
      AtomExpr out;
      out.kind = AtomExpr::Kind::Not;
      out.kids.push_back(parse_not());
      return out;
    }
    return parse_primitive();
  }

  int read_number(int fallback) {
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      int value = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        value = value * 10 + (text_[pos_] - '0');
        ++pos_;
      }
      return value;
    }
    return fallback;
  }

  AtomExpr parse_primitive() {
    if (pos_ >= text_.size()) throw ParseError("truncated pattern expression", pos_);
    const std::size_t at = pos_;
    const char c = text_[pos_];
    AtomExpr expr;
    if (c == '*') {
      expr.kind = AtomExpr::Kind::True;
      ++pos_;
      return expr;
    }
    if (c == '#') {
      ++pos_;
      expr.kind = AtomExpr::Kind::Element;
      expr.value = read_number(-1);
      if (expr.value < 0) throw ParseError("expected atomic number after '#'", at);
      return expr;
    }
    if (c == '+' || c == '-') {
      const int sign = c == '+' ? 1 : -1;
      ++pos_;
      int magnitude = 1;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        magnitude = read_number(1);
      } else {
        while (pos_ < text_.size() && text_[pos_] == c) {
          ++magnitude;
          ++pos_;
        }
      }
      expr.kind = AtomExpr::Kind::Charge;
      expr.value = sign * magnitude;
      return expr;
    }
    if (c == 'a') {
      expr.kind = AtomExpr::Kind::Aromatic;
      ++pos_;
      return expr;
    }
    if (c == 'A') {
      expr.kind = AtomExpr::Kind::Aliphatic;
      ++pos_;
      return expr;
    }
    if (c == 'R' || c == 'r') {
      ++pos_;
      expr.kind = AtomExpr::Kind::InRing;
      expr.value = read_number(1) == 0 ? 0 : 1;
      return expr;
    }
    if (c == 'H') {
      // Bare H inside a bracket is a hydrogen-count primitive except when it
      // names the element itself (of no use for heavy-atom alert patterns).
      ++pos_;
      expr.kind = AtomExpr::Kind::HCount;
      expr.value = read_number(1);
      return expr;
    }
    if (c == 'D') {
      ++pos_;
      expr.kind = AtomExpr::Kind::Degree;
      expr.value = read_number(1);
      return expr;
    }
    if (c == 'X') {
      ++pos_;
      expr.kind = AtomExpr::Kind::Connections;
      expr.value = read_number(1);
      return expr;
    }
    // Element symbol: two-letter first, then single letter.
    std::string symbol;
    bool aromatic = false;
    if (c == 'C' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'l') {
      symbol = "Cl";
      pos_ += 2;
    } else if (c == 'B' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'r') {
      symbol = "Br";
      pos_ += 2;
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      symbol = c;
      ++pos_;
    } else if (std::islower(static_cast<unsigned char>(c))) {
      aromatic = true;
      symbol = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      ++pos_;
    } else {
      throw ParseError(std::string("unsupported pattern primitive '") + c + "'", at);
    }
    auto element = element_from_symbol(symbol);
    if (!element) throw ParseError("unsupported element in pattern", at);
    expr.kind = aromatic ? AtomExpr::Kind::ElementAromatic
                         : AtomExpr::Kind::ElementAliphatic;
    expr.value = static_cast<int>(*element);
    return expr;
  }

  void place_atom(AtomExpr expr) {
    pattern_.atoms.push_back({std::move(expr)});
    const int index = static_cast<int>(pattern_.atoms.size()) - 1;
    if (prev_ >= 0) {
      pattern_.bonds.push_back(
          {prev_, index, has_pending_ ? pending_ : BondPred::Default});
    }
    has_pending_ = false;
    prev_ = index;
  }

  const std::string& text_;
  const std::string& name_;
  std::size_t pos_ = 0;
  Pattern pattern_;
  int prev_ = -1;
  BondPred pending_ = BondPred::Default;
  bool has_pending_ = false;
  std::vector<int> branch_stack_;
  std::map<int, std::tuple<int, BondPred, bool>> ring_slots_;
};

struct Matcher {
  const MolGraph& m;
  const Pattern& p;
  bool first_only;

  std::vector<int> order;                 // pattern atoms in placement order
  std::vector<std::pair<int, int>> back;  // (ordered pos of anchor, bond idx in p)
  std::vector<int> assignment;            // pattern atom -> molecule atom
  std::vector<bool> used;
  std::set<std::vector<int>> seen_sets;
  std::vector<std::vector<int>> results;
  static constexpr std::size_t kMaxEmbeddings = 100000;
  std::size_t embeddings = 0;

  explicit Matcher(const MolGraph& graph, const Pattern& pattern, bool first)
      : m(graph), p(pattern), first_only(first) {
    build_order();
    assignment.assign(p.atoms.size(), -1);
    used.assign(static_cast<std::size_t>(m.atom_count()), false);
  }

  void build_order() {
    const std::size_t n = p.atoms.size();
    std::vector<bool> placed(n, false);
    order.push_back(0);
    placed[0] = true;
    back.push_back({-1, -1});
    while (order.size() < n) {
      bool advanced = false;
      for (std::size_t b = 0; b < p.bonds.size(); ++b) {
        const PatternBond& bond = p.bonds[b];
        int known = -1, unknown = -1;
        if (placed[static_cast<std::size_t>(bond.a)] &&
            !placed[static_cast<std::size_t>(bond.b)]) {
          known = bond.a;
          unknown = bond.b;
        } else if (placed[static_cast<std::size_t>(bond.b)] &&
                   !placed[static_cast<std::size_t>(bond.a)]) {
          known = bond.b;
          unknown = bond.a;
        } else {
          continue;
        }
        order.push_back(unknown);
        placed[static_cast<std::size_t>(unknown)] = true;
        back.push_back({known, static_cast<int>(b)});
        advanced = true;
        break;
      }
      if (!advanced) {
        throw std::runtime_error("disconnected pattern: " + p.smarts);
      }
    }
  }

  bool pattern_bonds_consistent(int pattern_atom, int mol_atom) const {
    for (const PatternBond& bond : p.bonds) {
      int other = -1;
      if (bond.a == pattern_atom) other = bond.b;
      if (bond.b == pattern_atom) other = bond.a;
      if (other < 0) continue;
      const int mapped = assignment[static_cast<std::size_t>(other)];
      if (mapped < 0) continue;
      const int mb = m.bond_between(mol_atom, mapped);
      if (mb < 0 || !eval_bond(bond.pred, m.bond(mb))) return false;
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (embeddings >= kMaxEmbeddings) return true;
    if (depth == order.size()) {
      ++embeddings;
      std::vector<int> atoms(assignment.begin(), assignment.end());
      std::vector<int> sorted = atoms;
      std::sort(sorted.begin(), sorted.end());
      if (seen_sets.insert(sorted).second) results.push_back(atoms);
      return first_only;
    }
    const int pk = order[depth];
    if (depth == 0) {
      for (int i = 0; i < m.atom_count(); ++i) {
        if (!eval_atom(p.atoms[static_cast<std::size_t>(pk)].expr, m, i)) continue;
        assignment[static_cast<std::size_t>(pk)] = i;
        used[static_cast<std::size_t>(i)] = true;
        if (extend(depth + 1)) return true;
        assignment[static_cast<std::size_t>(pk)] = -1;
        used[static_cast<std::size_t>(i)] = false;
      }
      return false;
    }
    const auto [anchor, bond_idx] = back[depth];
    const int anchor_mol = assignment[static_cast<std::size_t>(anchor)];
    const BondPred pred = p.bonds[static_cast<std::size_t>(bond_idx)].pred;
    for (const auto& [candidate, mb] : m.neighbors(anchor_mol)) {
      if (used[static_cast<std::size_t>(candidate)]) continue;
      if (!eval_bond(pred, m.bond(mb))) continue;
      if (!eval_atom(p.atoms[static_cast<std::size_t>(pk)].expr, m, candidate)) continue;
      if (!pattern_bonds_consistent(pk, candidate)) continue;
      assignment[static_cast<std::size_t>(pk)] = candidate;
      used[static_cast<std::size_t>(candidate)] = true;
      if (extend(depth + 1)) return true;
      assignment[static_cast<std::size_t>(pk)] = -1;
      used[static_cast<std::size_t>(candidate)] = false;
    }
    return false;
  }
};

}  // namespace

Pattern parse_pattern(const std::string& smarts, const std::string& name) {
  PatternParser parser(smarts, name);
  return parser.run();
}

std::vector<std::vector<int>> match_pattern(const MolGraph& m, const Pattern& p) {
  if (m.empty()) return {};
  Matcher matcher(m, p, false);
  matcher.extend(0);
  return std::move(matcher.results);
}

bool has_match(const MolGraph& m, const Pattern& p) {
  if (m.empty()) return false;
  Matcher matcher(m, p, true);
  matcher.extend(0);
  return !matcher.results.empty();
}

std::vector<Pattern> load_patterns(const std::string& path) {
  verify_table_checksum(path);
  std::vector<Pattern> patterns;
  for (const std::string& line : read_table_lines(path)) {
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw std::runtime_error("malformed pattern row (want name<TAB>smarts): " + line);
    }
    patterns.push_back(parse_pattern(line.substr(tab + 1), line.substr(0, tab)));
  }
  return patterns;
}

}  // namespace mevo
