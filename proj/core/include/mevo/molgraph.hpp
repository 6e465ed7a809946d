#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mevo/elements.hpp"

namespace mevo {

struct Atom {
  Element element = Element::C;
  std::int8_t charge = 0;
  std::uint8_t implicit_h = 0;  // filled by finalize() unless fixed_h
  bool fixed_h = false;         // bracket atoms carry their H count verbatim
  bool aromatic = false;
  bool in_ring = false;
};

struct Bond {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::uint8_t order = 1;  // Kekulé order 1..3; aromatic rings keep alternation
  bool aromatic = false;
  bool in_ring = false;
};

struct Ring {
  std::vector<int> atoms;  // in traversal order around the ring
  std::vector<int> bonds;
};

// Undirected labelled multigraph-free molecular graph.  Bond orders are
// always Kekulé; aromaticity lives in separate flags so two Kekulé
// assignments of the same aromatic system compare equal downstream.
class MolGraph {
 public:
  int add_atom(Element e, int charge = 0);
  // Throws std::invalid_argument on self loops or parallel bonds.
  int add_bond(int a, int b, int order, bool aromatic = false);

  int atom_count() const { return static_cast<int>(atoms_.size()); }
  int bond_count() const { return static_cast<int>(bonds_.size()); }
  bool empty() const { return atoms_.empty(); }

  Atom& atom(int i) { return atoms_[static_cast<std::size_t>(i)]; }
  const Atom& atom(int i) const { return atoms_[static_cast<std::size_t>(i)]; }
  Bond& bond(int i) { return bonds_[static_cast<std::size_t>(i)]; }
  const Bond& bond(int i) const { return bonds_[static_cast<std::size_t>(i)]; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Bond>& bonds() const { return bonds_; }

  // (neighbor atom, bond index) pairs in insertion order.
  const std::vector<std::pair<int, int>>& neighbors(int i) const {
    return adjacency_[static_cast<std::size_t>(i)];
  }

  int bond_between(int a, int b) const;
  int degree(int i) const { return static_cast<int>(neighbors(i).size()); }

  // Sum of Kekulé bond orders at an atom (excludes implicit hydrogens).
  int bond_order_sum(int i) const;

  // Implicit plus explicit-atom hydrogens.
  int total_h(int i) const;

  int other_end(int bond_index, int from) const {
    const Bond& b = bond(bond_index);
    return static_cast<int>(b.a) == from ? static_cast<int>(b.b)
                                         : static_cast<int>(b.a);
  }

  // Assigns implicit hydrogens from the valence table for every atom whose
  // hydrogen count is not fixed.  Hypervalent atoms get zero hydrogens.
  void finalize(const ValenceTable& table = ValenceTable::standard());

  // True when every atom's bond order sum stays within its capacity.
  bool valence_valid(const ValenceTable& table = ValenceTable::standard()) const;

  // Connected component label per atom plus the component count.
  std::pair<std::vector<int>, int> components() const;

  // Copy of the largest connected component (ties broken by lowest atom
  // index); perception flags are not carried over.
  MolGraph largest_fragment() const;

  const std::vector<Ring>& rings() const { return rings_; }
  bool perceived() const { return perceived_; }

  // Exposed for the perception pass.
  void set_rings(std::vector<Ring> rings);
  void set_perceived(bool value) { perceived_ = value; }

 private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
  std::vector<Ring> rings_;
  bool perceived_ = false;
};

// Ring perception (smallest set of smallest rings) followed by Hückel 4n+2
// aromaticity flagging for five to seven membered rings.  Idempotent.
void perceive(MolGraph& m);
MolGraph perceived_copy(const MolGraph& m);

// Smallest set of smallest rings without touching aromatic flags.
std::vector<Ring> compute_rings(const MolGraph& m);

// Deterministic canonical SMILES for the perceived graph; equal strings
// exactly when the graphs are isomorphic over (element, charge, bond
// order/aromaticity) labels.  Perceives a copy when needed.
std::string canonical_key(const MolGraph& m);

// Canonical atom ranks (a permutation of 0..n-1) for a perceived graph.
std::vector<int> canonical_ranks(const MolGraph& m);

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

// SMILES subset reader: atoms (organic subset and brackets with charge and
// hydrogen counts), single/double/triple/aromatic bonds, branches, ring
// closures including %nn, dot-separated fragments.  Stereo and isotope
// annotations are dropped with a warning.  The returned graph is kekulized,
// hydrogen filled and perceived.
MolGraph parse_smiles(const std::string& smiles);

// Canonical-form emitter for a perceived graph (aromatic atoms lowercase,
// aromatic bonds implicit, brackets only where needed).
std::string write_smiles(const MolGraph& m);

}  // namespace mevo
