#include <algorithm>
#include <cstdint>
#include <queue>
#include <vector>

#include "mevo/molgraph.hpp"

namespace mevo {

namespace {

using EdgeSet = std::vector<std::uint64_t>;

EdgeSet make_edge_set(int bond_count) {
  return EdgeSet(static_cast<std::size_t>((bond_count + 63) / 64), 0);
}

void set_edge(EdgeSet& s, int bond) {
  s[static_cast<std::size_t>(bond) / 64] |= std::uint64_t{1} << (bond % 64);
}

bool empty_set(const EdgeSet& s) {
  for (std::uint64_t word : s) {
    if (word != 0) return false;
  }
  return true;
}

void xor_into(EdgeSet& a, const EdgeSet& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
}

int lowest_edge(const EdgeSet& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != 0) {
      return static_cast<int>(i * 64) + __builtin_ctzll(s[i]);
    }
  }
  return -1;
}

struct Candidate {
  Ring ring;
  EdgeSet edges;
};

// Shortest cycle through a given bond: BFS between the endpoints with the
// bond itself removed, then close the path with the bond.
bool shortest_cycle_through(const MolGraph& m, int bond_index, Ring* out) {
  const Bond& bond = m.bond(bond_index);
  const int source = static_cast<int>(bond.a);
  const int target = static_cast<int>(bond.b);
  std::vector<int> parent_atom(static_cast<std::size_t>(m.atom_count()), -1);
  std::vector<int> parent_bond(static_cast<std::size_t>(m.atom_count()), -1);
  std::vector<bool> seen(static_cast<std::size_t>(m.atom_count()), false);
  std::queue<int> queue;
  queue.push(source);
  seen[static_cast<std::size_t>(source)] = true;
  while (!queue.empty() && !seen[static_cast<std::size_t>(target)]) {
    const int u = queue.front();
    queue.pop();
    for (const auto& [v, via] : m.neighbors(u)) {
      if (via == bond_index || seen[static_cast<std::size_t>(v)]) continue;
      seen[static_cast<std::size_t>(v)] = true;
      parent_atom[static_cast<std::size_t>(v)] = u;
      parent_bond[static_cast<std::size_t>(v)] = via;
      queue.push(v);
    }
  }
  if (!seen[static_cast<std::size_t>(target)]) return false;
  Ring ring;
  int walk = target;
  while (walk != source) {
    ring.atoms.push_back(walk);
    ring.bonds.push_back(parent_bond[static_cast<std::size_t>(walk)]);
    walk = parent_atom[static_cast<std::size_t>(walk)];
  }
  ring.atoms.push_back(source);
  ring.bonds.push_back(bond_index);
  return ring.atoms.size() >= 3 ? (void(*out = std::move(ring)), true) : false;
}

std::vector<Ring> smallest_ring_set(const MolGraph& m) {
  auto [labels, component_count] = m.components();
  const int cyclomatic = m.bond_count() - m.atom_count() + component_count;
  if (cyclomatic <= 0) return {};

  std::vector<Candidate> candidates;
  for (int b = 0; b < m.bond_count(); ++b) {
    Ring ring;
    if (!shortest_cycle_through(m, b, &ring)) continue;
    Candidate c;
    c.edges = make_edge_set(m.bond_count());
    for (int e : ring.bonds) set_edge(c.edges, e);
    c.ring = std::move(ring);
    candidates.push_back(std::move(c));
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& x, const Candidate& y) {
                     return x.ring.atoms.size() < y.ring.atoms.size();
                   });

  // Greedy GF(2) independence over bond incidence vectors gives exactly
  // cyclomatic-many rings (the SSSR count invariant).
  std::vector<Ring> rings;
  std::vector<std::pair<int, EdgeSet>> basis;  // (pivot edge, reduced vector)
  for (auto& candidate : candidates) {
    EdgeSet reduced = candidate.edges;
    for (const auto& [pivot, vec] : basis) {
      if (reduced[static_cast<std::size_t>(pivot) / 64] >>
              (pivot % 64) & 1) {
        xor_into(reduced, vec);
      }
    }
    if (empty_set(reduced)) continue;
    basis.emplace_back(lowest_edge(reduced), std::move(reduced));
    rings.push_back(std::move(candidate.ring));
    if (static_cast<int>(rings.size()) == cyclomatic) break;
  }
  return rings;
}

bool has_lone_pair(const MolGraph& m, int i) {
  const Atom& a = m.atom(i);
  const int sigma = m.bond_order_sum(i) + a.implicit_h;
  switch (a.element) {
    case Element::N:
    case Element::P:
      return a.charge == 0 ? sigma >= 3 : (a.charge < 0 && sigma >= 2);
    case Element::O:
    case Element::S:
      return a.charge == 0 && sigma >= 2;
    case Element::C:
      return a.charge < 0;
    default:
      return false;
  }
}

// Pi electrons an atom contributes to a candidate aromatic ring, or -1 when
// the atom cannot take part in a conjugated system at all.
int pi_contribution(const MolGraph& m, int i, const std::vector<bool>& in_ring) {
  const Atom& a = m.atom(i);
  const ValenceTable& table = ValenceTable::standard();
  const ElementInfo* info = table.info(a.element);
  if (info == nullptr || !info->aromatic_candidate) return -1;

  bool double_in_ring = false;
  bool double_exocyclic = false;
  bool exocyclic_to_ring_atom = false;
  for (const auto& [nbr, bond_index] : m.neighbors(i)) {
    const Bond& b = m.bond(bond_index);
    if (b.order == 3) return -1;
    if (b.order != 2) continue;
    if (in_ring[static_cast<std::size_t>(nbr)]) {
      double_in_ring = true;
    } else {
      double_exocyclic = true;
      if (m.atom(nbr).in_ring) exocyclic_to_ring_atom = true;
    }
  }
  if (double_in_ring) return 1;
  if (double_exocyclic) {
    // A double bond into a fused neighbouring ring keeps the electron in the
    // conjugated system; a true exocyclic carbonyl contributes an empty
    // orbital (quinone-like carbon).
    return exocyclic_to_ring_atom ? 1 : 0;
  }
  if (has_lone_pair(m, i)) return 2;
  if (a.element == Element::C && a.charge > 0) return 0;
  return -1;
}

void flag_aromatic_rings(MolGraph& m) {
  for (int i = 0; i < m.atom_count(); ++i) m.atom(i).aromatic = false;
  for (int b = 0; b < m.bond_count(); ++b) m.bond(b).aromatic = false;

  for (const Ring& ring : m.rings()) {
    const std::size_t size = ring.atoms.size();
    if (size < 5 || size > 7) continue;
    std::vector<bool> membership(static_cast<std::size_t>(m.atom_count()), false);
    for (int a : ring.atoms) membership[static_cast<std::size_t>(a)] = true;

    int pi = 0;
    bool eligible = true;
    for (int a : ring.atoms) {
      // sp3-saturated ring atoms (quaternary carbons, sulfones, ...) break
      // conjugation no matter what the electron count says.
      const int contribution = pi_contribution(m, a, membership);
      if (contribution < 0) {
        eligible = false;
        break;
      }
      pi += contribution;
    }
    if (!eligible || pi < 2 || pi % 4 != 2) continue;
    for (int a : ring.atoms) m.atom(a).aromatic = true;
    for (int b : ring.bonds) m.bond(b).aromatic = true;
  }
}

}  // namespace

std::vector<Ring> compute_rings(const MolGraph& m) { return smallest_ring_set(m); }

void perceive(MolGraph& m) {
  m.set_rings(smallest_ring_set(m));
  flag_aromatic_rings(m);
  m.set_perceived(true);
}

MolGraph perceived_copy(const MolGraph& m) {
  MolGraph copy = m;
  perceive(copy);
  return copy;
}

}  // namespace mevo
