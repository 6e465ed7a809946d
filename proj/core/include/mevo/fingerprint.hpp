#pragma once

#include <cstdint>
#include <vector>

#include "mevo/molgraph.hpp"

namespace mevo {

enum class FpKind { Ecfp, Fcfp };

struct Fingerprint {
  std::vector<uint64_t> words;
  int n_bits = 0;
  FpKind kind = FpKind::Ecfp;
  int radius = 0;

  void set(uint64_t bit) {
    words[static_cast<std::size_t>(bit / 64)] |= uint64_t{1} << (bit % 64);
  }
  bool test(uint64_t bit) const {
    return (words[static_cast<std::size_t>(bit / 64)] >> (bit % 64)) & 1;
  }
  int popcount() const;
  bool empty_bits() const { return popcount() == 0; }
};

// Iterative circular fingerprint.  ECFP starts from structural invariants
// (element, heavy degree, charge, total H, ring flag); FCFP from
// pharmacophore role flags (donor, acceptor, aromatic, halogen, basic,
// acidic).  FCFP4 = radius 2, ECFP6 = radius 3 by the usual naming.
Fingerprint circular_fingerprint(const MolGraph& m, FpKind kind, int radius,
                                 int n_bits = 2048);

Fingerprint fcfp4(const MolGraph& m, int n_bits = 2048);
Fingerprint ecfp6(const MolGraph& m, int n_bits = 2048);

double tanimoto(const Fingerprint& a, const Fingerprint& b);

// Unfolded environment identifiers with per-atom occurrence counts, used by
// the synthetic-accessibility fragment model (radius rounds inclusive).
std::vector<std::pair<uint64_t, int>> morgan_environments(const MolGraph& m,
                                                          int radius);

}  // namespace mevo
