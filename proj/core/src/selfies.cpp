#include "mevo/selfies.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <stdexcept>

#include "mevo/data.hpp"

namespace mevo {

namespace {

struct TokenInfo {
  enum class Kind { Atom, Branch, Ring, Unknown };
  Kind kind = Kind::Unknown;
  int order = 1;        // bond prefix: 1 plain, 2 '=', 3 '#'
  Element element = Element::C;
  int charge = 0;
  int fixed_h = -1;     // >= 0 when the symbol pins a hydrogen count
  int width = 0;        // index-symbol count for branch/ring tokens
};

int prefix_order(std::string_view& body) {
  if (!body.empty() && body.front() == '=') {
    body.remove_prefix(1);
    return 2;
  }
  if (!body.empty() && body.front() == '#') {
    body.remove_prefix(1);
    return 3;
  }
  return 1;
}

// Classify one bracketed symbol.  Returns Unknown for anything outside the
// grammar; tokenize treats that as an error while decode skips it.
TokenInfo classify(const std::string& symbol) {
  TokenInfo info;
  if (symbol.size() < 3 || symbol.front() != '[' || symbol.back() != ']') {
    return info;
  }
  std::string inner = symbol.substr(1, symbol.size() - 2);
  // Stereochemistry markers are accepted but dropped.
  std::erase_if(inner, [](char c) { return c == '@' || c == '/' || c == '\\'; });
  std::string_view body = inner;
  info.order = prefix_order(body);

  auto read_width = [&](std::string_view head) -> bool {
    if (body.size() == head.size() + 1 && body.substr(0, head.size()) == head) {
      const char digit = body.back();
      if (digit >= '1' && digit <= '3') {
        info.width = digit - '0';
        return true;
      }
    }
    return false;
  };
  if (read_width("Branch")) {
    info.kind = TokenInfo::Kind::Branch;
    return info;
  }
  if (read_width("Ring")) {
    info.kind = TokenInfo::Kind::Ring;
    return info;
  }

  // Atom symbol: element, optional Hn, optional charge.
  std::size_t pos = 0;
  if (pos >= body.size() || !std::isupper(static_cast<unsigned char>(body[pos]))) {
    return info;
  }
  std::string symbol_text(1, body[pos]);
  ++pos;
  if (pos < body.size() && std::islower(static_cast<unsigned char>(body[pos]))) {
    symbol_text.push_back(body[pos]);
    ++pos;
  }
  auto element = element_from_symbol(symbol_text);
  if (!element) return info;
  info.element = *element;

  if (pos < body.size() && body[pos] == 'H' && symbol_text != "H") {
    ++pos;
    if (pos < body.size() && std::isdigit(static_cast<unsigned char>(body[pos]))) {
      info.fixed_h = body[pos] - '0';
      ++pos;
    } else {
      info.fixed_h = 1;
    }
  }
  if (pos < body.size() && (body[pos] == '+' || body[pos] == '-')) {
    const int sign = body[pos] == '+' ? 1 : -1;
    ++pos;
    int magnitude = 1;
    if (pos < body.size() && std::isdigit(static_cast<unsigned char>(body[pos]))) {
      magnitude = body[pos] - '0';
      ++pos;
    }
    info.charge = sign * magnitude;
  }
  if (pos != body.size()) return info;
  if (info.charge < -1 || info.charge > 1) return info;
  info.kind = TokenInfo::Kind::Atom;
  return info;
}

// Published SELFIES index alphabet: 16 symbols interpreted as base-16 digits.
const std::array<const char*, 16>& index_table() {
  static const std::array<const char*, 16> table = {
      "[C]",        "[Ring1]",    "[Ring2]",   "[Branch1]", "[=Branch1]",
      "[#Branch1]", "[Branch2]",  "[=Branch2]", "[#Branch2]", "[O]",
      "[N]",        "[=N]",       "[=C]",      "[#C]",      "[S]",
      "[P]"};
  return table;
}

class Decoder {
 public:
  Decoder(const Genome& genome, const ValenceTable& table)
      : genome_(genome), table_(table) {}

  MolGraph run() {
    derive(genome_.size(), -1, 0);
    mol_.finalize(table_);
    return std::move(mol_);
  }

 private:
  int capacity_left(int atom) const { return remain_[static_cast<std::size_t>(atom)]; }

  int place_atom(const TokenInfo& info) {
    const int idx = mol_.add_atom(info.element, info.charge);
    if (info.fixed_h >= 0) {
      Atom& a = mol_.atom(idx);
      a.fixed_h = true;
      a.implicit_h = static_cast<std::uint8_t>(info.fixed_h);
    }
    int cap = table_.capacity(info.element, info.charge);
    if (info.fixed_h > 0) cap = std::max(0, cap - info.fixed_h);
    remain_.push_back(cap);
    return idx;
  }

  int read_index(std::size_t limit, std::size_t& consumed, int width) {
    int value = 0;
    for (int i = 0; i < width && consumed < limit && cursor_ < genome_.size(); ++i) {
      const auto it = index_lookup().find(genome_[cursor_]);
      ++cursor_;
      ++consumed;
      value = value * 16 + (it == index_lookup().end() ? 0 : it->second);
    }
    return value;
  }

  static const std::map<std::string, int>& index_lookup() {
    static const std::map<std::string, int> lookup = [] {
      std::map<std::string, int> out;
      for (int i = 0; i < 16; ++i) out[index_table()[static_cast<std::size_t>(i)]] = i;
      return out;
    }();
    return lookup;
  }

  // Derive up to `limit` symbols starting at cursor_.  `root` < 0 at the top
  // level; inside a branch it is the atom the first placed atom bonds to with
  // order at most `init_state`.  Returns the number of symbols consumed.
  std::size_t derive(std::size_t limit, int root, int init_state) {
    std::size_t consumed = 0;
    int prev = root;
    int state = root < 0 ? -1 : init_state;  // -1: unbonded start
    while (consumed < limit && cursor_ < genome_.size()) {
      if (prev >= 0 && state == 0) break;  // saturated: derivation stops
      const TokenInfo info = classify(genome_[cursor_]);
      ++cursor_;
      ++consumed;
      switch (info.kind) {
        case TokenInfo::Kind::Atom: {
          int cap = table_.capacity(info.element, info.charge);
          if (info.fixed_h > 0) cap = std::max(0, cap - info.fixed_h);
          if (prev < 0) {
            prev = place_atom(info);
            state = capacity_left(prev);
            break;
          }
          int order = std::min(info.order, std::min(state, cap));
          if (order <= 0) break;  // zero-capacity atom: unusable, skipped
          const int idx = place_atom(info);
          mol_.add_bond(prev, idx, static_cast<uint8_t>(order));
          remain_[static_cast<std::size_t>(prev)] -= order;
          remain_[static_cast<std::size_t>(idx)] -= order;
          prev = idx;
          state = capacity_left(idx);
          break;
        }
        case TokenInfo::Kind::Branch: {
          if (prev < 0 || state <= 1) break;  // unusable branch token
          const int q = read_index(limit, consumed, info.width);
          const int binit = std::min(info.order, state - 1);
          const std::size_t budget =
              std::min(static_cast<std::size_t>(q) + 1, limit - consumed);
          consumed += derive(budget, prev, binit);
          state = capacity_left(prev);  // branch bonds drew on prev directly
          break;
        }
        case TokenInfo::Kind::Ring: {
          const int q = read_index(limit, consumed, info.width);
          if (prev < 0) break;
          const int target = std::max(0, prev - (q + 1));
          if (target == prev) break;
          if (mol_.bond_between(prev, target) >= 0) break;
          const int order =
              std::min(info.order, std::min(state, capacity_left(target)));
          if (order <= 0) break;
          mol_.add_bond(prev, target, static_cast<uint8_t>(order));
          remain_[static_cast<std::size_t>(prev)] -= order;
          remain_[static_cast<std::size_t>(target)] -= order;
          state -= order;
          break;
        }
        case TokenInfo::Kind::Unknown:
          break;  // decode is total: unusable tokens are skipped
      }
    }
    return consumed;
  }

  const Genome& genome_;
  const ValenceTable& table_;
  std::size_t cursor_ = 0;
  MolGraph mol_;
  std::vector<int> remain_;
};

class Encoder {
 public:
  Encoder(const MolGraph& m, const ValenceTable& table) : m_(m), table_(table) {}

  Genome run() {
    if (m_.empty()) return {};
    const int n = m_.atom_count();
    position_.assign(static_cast<std::size_t>(n), -1);
    entering_.assign(static_cast<std::size_t>(n), 0);
    children_.assign(static_cast<std::size_t>(n), {});
    back_edges_.assign(static_cast<std::size_t>(n), {});
    assign_positions(0);
    return emit(0);
  }

 private:
  // DFS pre-order; records tree children, entering bond orders, and the back
  // edges that become ring-closure tokens at their later-placed endpoint.
  void assign_positions(int start) {
    std::vector<bool> edge_used(static_cast<std::size_t>(m_.bond_count()), false);
    struct Frame {
      int atom;
      std::size_t next = 0;
    };
    position_[static_cast<std::size_t>(start)] = next_position_++;
    std::vector<Frame> stack{{start}};
    while (!stack.empty()) {
      Frame& frame = stack.back();
      const auto& adj = m_.neighbors(frame.atom);
      if (frame.next >= adj.size()) {
        stack.pop_back();
        continue;
      }
      const auto [nbr, bond_idx] = adj[frame.next++];
      if (edge_used[static_cast<std::size_t>(bond_idx)]) continue;
      edge_used[static_cast<std::size_t>(bond_idx)] = true;
      const int order = m_.bond(bond_idx).order;
      if (position_[static_cast<std::size_t>(nbr)] < 0) {
        position_[static_cast<std::size_t>(nbr)] = next_position_++;
        entering_[static_cast<std::size_t>(nbr)] = order;
        children_[static_cast<std::size_t>(frame.atom)].push_back(nbr);
        stack.push_back({nbr});
      } else {
        // Both endpoints placed: ring token lives at the later one.
        const int late =
            position_[static_cast<std::size_t>(frame.atom)] >
                    position_[static_cast<std::size_t>(nbr)]
                ? frame.atom
                : nbr;
        const int early = late == frame.atom ? nbr : frame.atom;
        back_edges_[static_cast<std::size_t>(late)].push_back({early, order});
      }
    }
  }

  std::string atom_token(int atom) const {
    const Atom& a = m_.atom(atom);
    if (!table_.supported(a.element) || a.charge < -1 || a.charge > 1) {
      throw std::invalid_argument("unsupported atom for SELFIES encoding: " +
                                  std::string(element_symbol(a.element)));
    }
    const int order = entering_[static_cast<std::size_t>(atom)];
    std::string out = "[";
    if (order == 2) out += '=';
    if (order == 3) out += '#';
    out += element_symbol(a.element);
    const int bond_sum = m_.bond_order_sum(atom);
    const auto valence = table_.implicit_valence(a.element, a.charge, bond_sum);
    const int implicit = valence ? *valence - bond_sum : 0;
    const int want_h = m_.atom(atom).fixed_h ? m_.atom(atom).implicit_h
                                             : std::max(0, implicit);
    if (want_h != std::max(0, implicit)) {
      if (want_h > 9 ||
          table_.capacity(a.element, a.charge) - want_h < bond_sum) {
        throw std::invalid_argument(
            "hydrogen count not representable in SELFIES encoding");
      }
      out += 'H';
      out += static_cast<char>('0' + want_h);
    }
    if (a.charge == 1) out += "+1";
    if (a.charge == -1) out += "-1";
    out += ']';
    return out;
  }

  static const char* ring_token(int order, int width) {
    static const char* names[3][3] = {
        {"[Ring1]", "[Ring2]", "[Ring3]"},
        {"[=Ring1]", "[=Ring2]", "[=Ring3]"},
        {"[#Ring1]", "[#Ring2]", "[#Ring3]"}};
    return names[order - 1][width - 1];
  }

  static const char* branch_token(int order, int width) {
    static const char* names[3][3] = {
        {"[Branch1]", "[Branch2]", "[Branch3]"},
        {"[=Branch1]", "[=Branch2]", "[=Branch3]"},
        {"[#Branch1]", "[#Branch2]", "[#Branch3]"}};
    return names[order - 1][width - 1];
  }

  static int index_width(int value) {
    if (value < 16) return 1;
    if (value < 256) return 2;
    if (value < 4096) return 3;
    throw std::invalid_argument("SELFIES index out of range");
  }

  Genome emit(int atom) {
    Genome out;
    out.push_back(atom_token(atom));
    for (const auto& [early, order] : back_edges_[static_cast<std::size_t>(atom)]) {
      const int distance = position_[static_cast<std::size_t>(atom)] -
                           position_[static_cast<std::size_t>(early)];
      const int q = distance - 1;
      const int width = index_width(q);
      out.push_back(ring_token(order, width));
      for (std::string& sym : selfies_index_symbols(q, width)) {
        out.push_back(std::move(sym));
      }
    }
    const auto& kids = children_[static_cast<std::size_t>(atom)];
    for (std::size_t i = 0; i < kids.size(); ++i) {
      Genome sub = emit(kids[i]);
      if (i + 1 < kids.size()) {
        const int q = static_cast<int>(sub.size()) - 1;
        const int width = index_width(q);
        out.push_back(branch_token(entering_[static_cast<std::size_t>(kids[i])], width));
        for (std::string& sym : selfies_index_symbols(q, width)) {
          out.push_back(std::move(sym));
        }
      }
      out.insert(out.end(), std::make_move_iterator(sub.begin()),
                 std::make_move_iterator(sub.end()));
    }
    return out;
  }

  const MolGraph& m_;
  const ValenceTable& table_;
  std::vector<int> position_;
  std::vector<int> entering_;
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<std::pair<int, int>>> back_edges_;
  int next_position_ = 0;
};

std::vector<std::string> builtin_alphabet() {
  return {"[C]",    "[=C]",   "[#C]",      "[N]",        "[=N]",
          "[#N]",   "[O]",    "[=O]",      "[F]",        "[S]",
          "[=S]",   "[P]",    "[Cl]",      "[Br]",       "[I]",
          "[B]",    "[Ring1]", "[Ring2]",  "[=Ring1]",   "[Branch1]",
          "[=Branch1]", "[#Branch1]", "[Branch2]"};
}

}  // namespace

Genome tokenize_selfies(const std::string& text) {
  Genome out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] != '[') {
      throw ParseError("expected '[' in SELFIES string", pos);
    }
    const std::size_t close = text.find(']', pos);
    if (close == std::string::npos) {
      throw ParseError("unterminated SELFIES symbol", pos);
    }
    std::string symbol = text.substr(pos, close - pos + 1);
    if (classify(symbol).kind == TokenInfo::Kind::Unknown) {
      throw ParseError("unknown SELFIES symbol " + symbol, pos);
    }
    out.push_back(std::move(symbol));
    pos = close + 1;
  }
  return out;
}

std::string join_selfies(const Genome& genome) {
  std::string out;
  for (const std::string& sym : genome) out += sym;
  return out;
}

MolGraph decode_selfies(const Genome& genome, const ValenceTable& table) {
  Decoder decoder(genome, table);
  return decoder.run();
}

MolGraph decode_selfies(const Genome& genome) {
  return decode_selfies(genome, ValenceTable::standard());
}

Genome encode_selfies(const MolGraph& m) {
  MolGraph fragment = m;
  if (fragment.components().second > 1) fragment = fragment.largest_fragment();
  Encoder encoder(fragment, ValenceTable::standard());
  return encoder.run();
}

int selfies_symbol_index(const std::string& symbol) {
  for (int i = 0; i < 16; ++i) {
    if (symbol == index_table()[static_cast<std::size_t>(i)]) return i;
  }
  return 0;
}

std::vector<std::string> selfies_index_symbols(int value, int width) {
  std::vector<std::string> out(static_cast<std::size_t>(width));
  for (int i = width - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = index_table()[static_cast<std::size_t>(value % 16)];
    value /= 16;
  }
  return out;
}

const std::vector<std::string>& selfies_alphabet() {
  static const std::vector<std::string> alphabet = [] {
    const std::string path = data_path("selfies_alphabet.tsv");
    std::vector<std::string> out;
    try {
      for (const std::string& line : read_table_lines(path)) {
        if (classify(line).kind == TokenInfo::Kind::Unknown) {
          log_warn("skipping unknown alphabet symbol " + line);
          continue;
        }
        out.push_back(line);
      }
    } catch (const std::exception&) {
      out.clear();
    }
    if (out.empty()) out = builtin_alphabet();
    return out;
  }();
  return alphabet;
}

const std::vector<std::string>& selfies_atom_alphabet() {
  static const std::vector<std::string> atoms = [] {
    std::vector<std::string> out;
    for (const std::string& sym : selfies_alphabet()) {
      if (classify(sym).kind == TokenInfo::Kind::Atom) out.push_back(sym);
    }
    return out;
  }();
  return atoms;
}

}  // namespace mevo
