#pragma once

#include <string>
#include <vector>

#include "mevo/molgraph.hpp"

namespace mevo {

// Restricted SMARTS-subset pattern language.  Supported atom primitives:
// organic-subset symbols (aliphatic uppercase, aromatic lowercase), bracket
// expressions with element symbols, #n atomic numbers, a/A aromaticity, R/R0
// ring membership, Hn hydrogen counts, Dn heavy degree, Xn total connections,
// +/- charges, * wildcard, and !, &, ',', ';' logic.  Bonds: - = # : ~ plus
// the single-or-aromatic default.  Branches and ring closures as in SMILES.
struct AtomExpr {
  enum class Kind {
    True,
    Element,        // value = atomic number
    ElementAliphatic,
    ElementAromatic,
    Aromatic,
    Aliphatic,
    InRing,
    HCount,         // value = exact total hydrogen count
    Degree,         // value = heavy-atom degree
    Connections,    // value = heavy degree + total hydrogens
    Charge,         // value = formal charge
    Not,
    And,
    Or,
  };
  Kind kind = Kind::True;
  int value = 0;
  std::vector<AtomExpr> kids;
};

enum class BondPred { Default, Single, Double, Triple, Aromatic, Any };

struct PatternAtom {
  AtomExpr expr;
};

struct PatternBond {
  int a = 0;
  int b = 0;
  BondPred pred = BondPred::Default;
};

struct Pattern {
  std::string name;
  std::string smarts;
  std::vector<PatternAtom> atoms;
  std::vector<PatternBond> bonds;
};

// Throws ParseError on syntax outside the supported subset.
Pattern parse_pattern(const std::string& smarts, const std::string& name = "");

// All embeddings of the pattern, deduplicated by matched atom set so a
// symmetric pattern counts once per site.  The graph must be perceived.
std::vector<std::vector<int>> match_pattern(const MolGraph& m, const Pattern& p);

// Cheap existence check (stops at the first embedding).
bool has_match(const MolGraph& m, const Pattern& p);

// Loads "name<TAB>smarts" rows; '#' comments allowed.
std::vector<Pattern> load_patterns(const std::string& path);

}  // namespace mevo
