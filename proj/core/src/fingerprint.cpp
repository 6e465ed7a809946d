#include "mevo/fingerprint.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>

namespace mevo {

namespace {

uint64_t mix64(uint64_t x) {
  // splitmix64 finalizer: fixed, seedless, platform-independent.
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t hash_combine(uint64_t seed, uint64_t value) {
  return mix64(seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

int heavy_degree(const MolGraph& m, int i) {
  int count = 0;
  for (const auto& [nbr, bond] : m.neighbors(i)) {
    (void)bond;
    if (m.atom(nbr).element != Element::H) ++count;
  }
  return count;
}

bool is_halogen(Element e) {
  return e == Element::F || e == Element::Cl || e == Element::Br ||
         e == Element::I;
}

// Pharmacophore role flags for FCFP invariants (bundled rule set).
uint64_t fcfp_invariant(const MolGraph& m, int i) {
  const Atom& a = m.atom(i);
  const bool polar = a.element == Element::N || a.element == Element::O;
  const bool donor = polar && m.total_h(i) > 0;
  bool acceptor = polar;
  if (a.element == Element::N && a.aromatic &&
      heavy_degree(m, i) + m.total_h(i) >= 3) {
    acceptor = false;  // pyrrole-type lone pair is in the ring
  }
  if (a.charge > 0) acceptor = false;
  bool basic = false;
  bool acidic = false;
  if (a.element == Element::N && !a.aromatic) {
    bool only_singles = true;
    bool next_to_carbonyl = false;
    for (const auto& [nbr, bond] : m.neighbors(i)) {
      const Bond& b = m.bond(bond);
      if (b.aromatic || b.order != 1) only_singles = false;
      if (m.atom(nbr).element == Element::C) {
        for (const auto& [nn, nb] : m.neighbors(nbr)) {
          const Bond& b2 = m.bond(nb);
          if (nn != i && !b2.aromatic && b2.order == 2 &&
              (m.atom(nn).element == Element::O ||
               m.atom(nn).element == Element::S)) {
            next_to_carbonyl = true;
          }
        }
      }
    }
    basic = only_singles && !next_to_carbonyl;
  }
  if (a.charge > 0 && a.element == Element::N) basic = true;
  if (a.element == Element::O) {
    if (a.charge < 0) acidic = true;
    if (m.total_h(i) > 0) {
      for (const auto& [nbr, bond] : m.neighbors(i)) {
        (void)bond;
        if (m.atom(nbr).element != Element::C) continue;
        for (const auto& [nn, nb] : m.neighbors(nbr)) {
          const Bond& b2 = m.bond(nb);
          if (nn != i && !b2.aromatic && b2.order == 2 &&
              m.atom(nn).element == Element::O) {
            acidic = true;  // carboxylic acid hydroxyl
          }
        }
      }
    }
  }
  uint64_t flags = 0;
  flags |= donor ? 1u : 0u;
  flags |= acceptor ? 2u : 0u;
  flags |= a.aromatic ? 4u : 0u;
  flags |= is_halogen(a.element) ? 8u : 0u;
  flags |= basic ? 16u : 0u;
  flags |= acidic ? 32u : 0u;
  return mix64(flags + 0x10001ULL);
}

uint64_t ecfp_invariant(const MolGraph& m, int i) {
  const Atom& a = m.atom(i);
  uint64_t h = static_cast<uint64_t>(a.element);
  h = hash_combine(h, static_cast<uint64_t>(heavy_degree(m, i)));
  h = hash_combine(h, static_cast<uint64_t>(static_cast<int64_t>(a.charge) + 8));
  h = hash_combine(h, static_cast<uint64_t>(m.total_h(i)));
  h = hash_combine(h, a.in_ring ? 1u : 0u);
  return h;
}

int bond_label(const Bond& b) { return b.aromatic ? 4 : b.order; }

// Hashes per atom per round, with per-atom environment deduplication: a round
// whose covered bond set did not grow contributes no new feature.
std::vector<std::pair<uint64_t, int>> environments(const MolGraph& m,
                                                   FpKind kind, int radius) {
  MolGraph storage;
  const MolGraph* gp = &m;
  if (!m.perceived()) {
    storage = perceived_copy(m);
    gp = &storage;
  }
  const MolGraph& g = *gp;
  const int n = g.atom_count();
  std::vector<int> heavy;
  for (int i = 0; i < n; ++i) {
    if (g.atom(i).element != Element::H) heavy.push_back(i);
  }
  std::vector<uint64_t> hash(static_cast<std::size_t>(n), 0);
  for (int i : heavy) {
    hash[static_cast<std::size_t>(i)] =
        kind == FpKind::Ecfp ? ecfp_invariant(g, i) : fcfp_invariant(g, i);
  }
  std::map<uint64_t, int> counts;
  for (int i : heavy) ++counts[hash[static_cast<std::size_t>(i)]];

  // Per-atom covered bond sets for round-over-round deduplication.
  std::vector<std::set<int>> covered(static_cast<std::size_t>(n));
  std::vector<std::set<int>> frontier_atoms(static_cast<std::size_t>(n));
  for (int i : heavy) frontier_atoms[static_cast<std::size_t>(i)] = {i};

  for (int round = 1; round <= radius; ++round) {
    std::vector<uint64_t> next = hash;
    for (int i : heavy) {
      std::vector<std::pair<int, uint64_t>> nbrs;
      for (const auto& [nbr, bond] : g.neighbors(i)) {
        if (g.atom(nbr).element == Element::H) continue;
        nbrs.push_back({bond_label(g.bond(bond)),
                        hash[static_cast<std::size_t>(nbr)]});
      }
      std::sort(nbrs.begin(), nbrs.end());
      uint64_t h = hash_combine(static_cast<uint64_t>(round),
                                hash[static_cast<std::size_t>(i)]);
      for (const auto& [label, nh] : nbrs) {
        h = hash_combine(h, static_cast<uint64_t>(label));
        h = hash_combine(h, nh);
      }
      next[static_cast<std::size_t>(i)] = h;
    }
    for (int i : heavy) {
      // Expand the covered bond set by one hop.
      std::set<int> grown = covered[static_cast<std::size_t>(i)];
      std::set<int> new_frontier;
      for (int f : frontier_atoms[static_cast<std::size_t>(i)]) {
        for (const auto& [nbr, bond] : g.neighbors(f)) {
          if (g.atom(nbr).element == Element::H) continue;
          if (grown.insert(bond).second) new_frontier.insert(nbr);
        }
      }
      const bool grew = grown.size() > covered[static_cast<std::size_t>(i)].size();
      covered[static_cast<std::size_t>(i)] = std::move(grown);
      frontier_atoms[static_cast<std::size_t>(i)] = std::move(new_frontier);
      if (grew) ++counts[next[static_cast<std::size_t>(i)]];
    }
    hash = std::move(next);
  }
  std::vector<std::pair<uint64_t, int>> out(counts.begin(), counts.end());
  return out;
}

}  // namespace

int Fingerprint::popcount() const {
  int total = 0;
  for (uint64_t w : words) total += std::popcount(w);
  return total;
}

Fingerprint circular_fingerprint(const MolGraph& m, FpKind kind, int radius,
                                 int n_bits) {
  Fingerprint fp;
  fp.kind = kind;
  fp.radius = radius;
  fp.n_bits = n_bits;
  fp.words.assign(static_cast<std::size_t>((n_bits + 63) / 64), 0);
  for (const auto& [env, count] : environments(m, kind, radius)) {
    (void)count;
    fp.set(env % static_cast<uint64_t>(n_bits));
  }
  return fp;
}

Fingerprint fcfp4(const MolGraph& m, int n_bits) {
  return circular_fingerprint(m, FpKind::Fcfp, 2, n_bits);
}

Fingerprint ecfp6(const MolGraph& m, int n_bits) {
  return circular_fingerprint(m, FpKind::Ecfp, 3, n_bits);
}

double tanimoto(const Fingerprint& a, const Fingerprint& b) {
  if (a.kind != b.kind || a.n_bits != b.n_bits) {
    throw std::invalid_argument("tanimoto: fingerprint kind/length mismatch");
  }
  int inter = 0;
  int uni = 0;
  for (std::size_t w = 0; w < a.words.size(); ++w) {
    inter += std::popcount(a.words[w] & b.words[w]);
    uni += std::popcount(a.words[w] | b.words[w]);
  }
  if (uni == 0) return 1.0;  // both empty
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<std::pair<uint64_t, int>> morgan_environments(const MolGraph& m,
                                                          int radius) {
  return environments(m, FpKind::Ecfp, radius);
}

}  // namespace mevo
