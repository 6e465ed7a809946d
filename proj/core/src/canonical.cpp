#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "mevo/molgraph.hpp"

namespace mevo {

namespace {

// Aromatic bonds get a label of their own so canonical ranks never depend on
// which Kekulé assignment a ring happened to receive.
int bond_label(const Bond& b) { return b.aromatic ? 4 : b.order; }

using Invariant = std::tuple<int, int, int, int, int, int>;

Invariant atom_invariant(const MolGraph& m, int i) {
  const Atom& a = m.atom(i);
  return {static_cast<int>(a.element), a.charge, m.degree(i), m.total_h(i),
          a.in_ring ? 1 : 0, a.aromatic ? 1 : 0};
}

std::vector<int> dense_ranks(std::vector<std::pair<std::vector<int>, int>>& keyed) {
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> ranks(keyed.size(), 0);
  int next = 0;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i > 0 && keyed[i].first != keyed[i - 1].first) ++next;
    ranks[static_cast<std::size_t>(keyed[i].second)] = next;
  }
  return ranks;
}

int distinct(const std::vector<int>& ranks) {
  if (ranks.empty()) return 0;
  return *std::max_element(ranks.begin(), ranks.end()) + 1;
}

std::vector<int> refine(const MolGraph& m, std::vector<int> ranks) {
  const int n = m.atom_count();
  while (true) {
    std::vector<std::pair<std::vector<int>, int>> keyed;
    keyed.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      std::vector<int> key;
      key.push_back(ranks[static_cast<std::size_t>(i)]);
      std::vector<std::pair<int, int>> nbrs;
      for (const auto& [nbr, bond_index] : m.neighbors(i)) {
        nbrs.emplace_back(bond_label(m.bond(bond_index)),
                          ranks[static_cast<std::size_t>(nbr)]);
      }
      std::sort(nbrs.begin(), nbrs.end());
      for (const auto& [label, rank] : nbrs) {
        key.push_back(label);
        key.push_back(rank);
      }
      keyed.emplace_back(std::move(key), i);
    }
    std::vector<int> next = dense_ranks(keyed);
    if (distinct(next) == distinct(ranks)) return next;
    ranks = std::move(next);
  }
}

}  // namespace

std::vector<int> canonical_ranks(const MolGraph& m) {
  const int n = m.atom_count();
  std::vector<std::pair<std::vector<int>, int>> keyed;
  keyed.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto [element, charge, degree, hydrogens, ring, aromatic] = atom_invariant(m, i);
    keyed.emplace_back(
        std::vector<int>{element, charge, degree, hydrogens, ring, aromatic}, i);
  }
  std::vector<int> ranks = refine(m, dense_ranks(keyed));

  // Tie-breaking: split the first still-shared class at its lexicographically
  // smallest member (refined rank, element, charge, degree, H count, then
  // lowest index) and re-refine until every atom owns a rank.
  while (distinct(ranks) < n) {
    int target_class = -1;
    for (int r = 0; r < n; ++r) {
      int count = 0;
      for (int i = 0; i < n; ++i) {
        if (ranks[static_cast<std::size_t>(i)] == r) ++count;
      }
      if (count > 1) {
        target_class = r;
        break;
      }
    }
    int chosen = -1;
    std::tuple<int, int, int, int, int> best{};
    for (int i = 0; i < n; ++i) {
      if (ranks[static_cast<std::size_t>(i)] != target_class) continue;
      const Atom& a = m.atom(i);
      std::tuple<int, int, int, int, int> key{static_cast<int>(a.element),
                                              a.charge, m.degree(i),
                                              m.total_h(i), i};
      if (chosen < 0 || key < best) {
        best = key;
        chosen = i;
      }
    }
    for (int i = 0; i < n; ++i) {
      if (ranks[static_cast<std::size_t>(i)] >= target_class && i != chosen) {
        ++ranks[static_cast<std::size_t>(i)];
      }
    }
    ranks = refine(m, std::move(ranks));
  }
  return ranks;
}

std::string canonical_key(const MolGraph& m) {
  if (!m.perceived()) {
    MolGraph copy = m;
    perceive(copy);
    return write_smiles(copy);
  }
  return write_smiles(m);
}

}  // namespace mevo
