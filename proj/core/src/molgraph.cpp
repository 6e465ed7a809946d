#include "mevo/molgraph.hpp"

#include <algorithm>
#include <queue>

namespace mevo {

int MolGraph::add_atom(Element e, int charge) {
  Atom a;
  a.element = e;
  a.charge = static_cast<std::int8_t>(charge);
  atoms_.push_back(a);
  adjacency_.emplace_back();
  return static_cast<int>(atoms_.size()) - 1;
}

int MolGraph::add_bond(int a, int b, int order, bool aromatic) {
  if (a == b) throw std::invalid_argument("self bond");
  if (a < 0 || b < 0 || a >= atom_count() || b >= atom_count()) {
    throw std::invalid_argument("bond endpoint out of range");
  }
  if (bond_between(a, b) >= 0) throw std::invalid_argument("parallel bond");
  Bond bond;
  bond.a = static_cast<std::uint32_t>(a);
  bond.b = static_cast<std::uint32_t>(b);
  bond.order = static_cast<std::uint8_t>(order);
  bond.aromatic = aromatic;
  bonds_.push_back(bond);
  const int index = static_cast<int>(bonds_.size()) - 1;
  adjacency_[static_cast<std::size_t>(a)].emplace_back(b, index);
  adjacency_[static_cast<std::size_t>(b)].emplace_back(a, index);
  return index;
}

int MolGraph::bond_between(int a, int b) const {
  for (const auto& [nbr, bond_index] : neighbors(a)) {
    if (nbr == b) return bond_index;
  }
  return -1;
}

int MolGraph::bond_order_sum(int i) const {
  int sum = 0;
  for (const auto& [nbr, bond_index] : neighbors(i)) {
    sum += bond(bond_index).order;
  }
  return sum;
}

int MolGraph::total_h(int i) const {
  int h = atom(i).implicit_h;
  for (const auto& [nbr, bond_index] : neighbors(i)) {
    if (atom(nbr).element == Element::H) ++h;
  }
  return h;
}

void MolGraph::finalize(const ValenceTable& table) {
  for (int i = 0; i < atom_count(); ++i) {
    Atom& a = atom(i);
    if (a.fixed_h) continue;
    const int sum = bond_order_sum(i);
    auto valence = table.implicit_valence(a.element, a.charge, sum);
    const int h = valence ? *valence - sum : 0;
    a.implicit_h = static_cast<std::uint8_t>(h < 0 ? 0 : h);
  }
}

bool MolGraph::valence_valid(const ValenceTable& table) const {
  for (int i = 0; i < atom_count(); ++i) {
    const Atom& a = atom(i);
    if (!table.supported(a.element)) return false;
    if (a.charge < -1 || a.charge > 1) return false;
    if (bond_order_sum(i) > table.capacity(a.element, a.charge)) return false;
  }
  return true;
}

std::pair<std::vector<int>, int> MolGraph::components() const {
  std::vector<int> label(static_cast<std::size_t>(atom_count()), -1);
  int count = 0;
  for (int start = 0; start < atom_count(); ++start) {
    if (label[static_cast<std::size_t>(start)] >= 0) continue;
    std::queue<int> queue;
    queue.push(start);
    label[static_cast<std::size_t>(start)] = count;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      for (const auto& [v, bond_index] : neighbors(u)) {
        if (label[static_cast<std::size_t>(v)] < 0) {
          label[static_cast<std::size_t>(v)] = count;
          queue.push(v);
        }
      }
    }
    ++count;
  }
  return {std::move(label), count};
}

MolGraph MolGraph::largest_fragment() const {
  if (empty()) return {};
  auto [label, count] = components();
  if (count == 1) {
    MolGraph copy = *this;
    copy.set_rings({});
    copy.set_perceived(false);
    return copy;
  }
  std::vector<int> sizes(static_cast<std::size_t>(count), 0);
  for (int l : label) ++sizes[static_cast<std::size_t>(l)];
  const int best = static_cast<int>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  MolGraph out;
  std::vector<int> remap(static_cast<std::size_t>(atom_count()), -1);
  for (int i = 0; i < atom_count(); ++i) {
    if (label[static_cast<std::size_t>(i)] != best) continue;
    const int j = out.add_atom(atom(i).element, atom(i).charge);
    out.atom(j) = atom(i);
    remap[static_cast<std::size_t>(i)] = j;
  }
  for (const Bond& b : bonds_) {
    const int a = remap[b.a];
    const int c = remap[b.b];
    if (a >= 0 && c >= 0) out.add_bond(a, c, b.order, b.aromatic);
  }
  return out;
}

void MolGraph::set_rings(std::vector<Ring> rings) {
  rings_ = std::move(rings);
  for (Atom& a : atoms_) a.in_ring = false;
  for (Bond& b : bonds_) b.in_ring = false;
  for (const Ring& ring : rings_) {
    for (int a : ring.atoms) atoms_[static_cast<std::size_t>(a)].in_ring = true;
    for (int b : ring.bonds) bonds_[static_cast<std::size_t>(b)].in_ring = true;
  }
}

}  // namespace mevo
