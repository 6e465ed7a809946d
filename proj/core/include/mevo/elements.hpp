#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mevo {

// Elements supported by the codec and the molecular graph.  The set is small
// on purpose: it covers the organic subset that occurs in drug-like corpora.
enum class Element : std::uint8_t {
  H = 1,
  B = 5,
  C = 6,
  N = 7,
  O = 8,
  F = 9,
  P = 15,
  S = 16,
  Cl = 17,
  Br = 35,
  I = 53,
};

struct ElementInfo {
  Element element;
  std::string_view symbol;
  double mass;                      // standard atomic weight
  std::vector<int> valences;        // allowed valences for implicit H filling
  int capacity;                     // maximum bonding capacity during decoding
  bool organic_subset;              // may be written without brackets in SMILES
  bool aromatic_candidate;          // may carry an aromatic flag
};

// Per element+charge bonding rules.  `capacity` clamps bond formation during
// SELFIES derivation; `valences` drive implicit hydrogen assignment.
class ValenceTable {
 public:
  // Built-in defaults for {H,B,C,N,O,F,P,S,Cl,Br,I} with charges in [-1,+1].
  static const ValenceTable& standard();

  // Replaces rows from a table file (see data/valence.tsv for the format).
  static ValenceTable from_file(const std::string& path);

  const ElementInfo* info(Element e) const;
  const ElementInfo* info(std::string_view symbol) const;

  // Maximum number of bond units an atom may still form.
  int capacity(Element e, int charge) const;

  // Smallest allowed valence >= bond_sum, or nullopt if bond_sum exceeds all
  // allowed valences (the atom is then hypervalent but tolerated with 0 H).
  std::optional<int> implicit_valence(Element e, int charge, int bond_sum) const;

  bool supported(Element e) const { return info(e) != nullptr; }

  const std::vector<ElementInfo>& rows() const { return rows_; }

 private:
  std::vector<ElementInfo> rows_;
};

std::optional<Element> element_from_symbol(std::string_view symbol);
std::string_view element_symbol(Element e);
double element_mass(Element e);

}  // namespace mevo
