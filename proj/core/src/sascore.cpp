#include "mevo/sascore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

#include "mevo/data.hpp"
#include "mevo/fingerprint.hpp"

namespace mevo {

namespace {

constexpr double kMissingScore = -4.0;

struct RingFeatures {
  int spiro = 0;
  int bridgehead = 0;
  bool macrocycle = false;
};

RingFeatures ring_features(const MolGraph& m) {
  RingFeatures out;
  const auto& rings = m.rings();
  std::set<int> spiro_atoms;
  std::set<int> bridgeheads;
  std::vector<std::set<int>> atom_sets;
  std::vector<std::set<int>> bond_sets;
  for (const Ring& r : rings) {
    atom_sets.emplace_back(r.atoms.begin(), r.atoms.end());
    bond_sets.emplace_back(r.bonds.begin(), r.bonds.end());
    if (r.atoms.size() > 8) out.macrocycle = true;
  }
  for (std::size_t i = 0; i < rings.size(); ++i) {
    for (std::size_t j = i + 1; j < rings.size(); ++j) {
      std::vector<int> shared_atoms;
      std::set_intersection(atom_sets[i].begin(), atom_sets[i].end(),
                            atom_sets[j].begin(), atom_sets[j].end(),
                            std::back_inserter(shared_atoms));
      if (shared_atoms.empty()) continue;
      std::vector<int> shared_bonds;
      std::set_intersection(bond_sets[i].begin(), bond_sets[i].end(),
                            bond_sets[j].begin(), bond_sets[j].end(),
                            std::back_inserter(shared_bonds));
      if (shared_atoms.size() == 1 && shared_bonds.empty()) {
        spiro_atoms.insert(shared_atoms[0]);
      } else if (shared_bonds.size() >= 2) {
        // Bridged pair: junction atoms have three ring bonds.
        for (int a : shared_atoms) {
          int ring_bonds = 0;
          for (const auto& [nbr, bond] : m.neighbors(a)) {
            (void)nbr;
            if (m.bond(bond).in_ring) ++ring_bonds;
          }
          if (ring_bonds >= 3) bridgeheads.insert(a);
        }
      }
    }
  }
  out.spiro = static_cast<int>(spiro_atoms.size());
  out.bridgehead = static_cast<int>(bridgeheads.size());
  return out;
}

}  // namespace

const SaFragmentTable& sa_fragment_table() {
  static const SaFragmentTable table = read_sa_table(data_path("sa_fragments.tsv"));
  return table;
}

SaFragmentTable build_sa_table(const std::vector<MolGraph>& corpus) {
  std::map<uint64_t, long long> counts;
  for (const MolGraph& m : corpus) {
    for (const auto& [env, count] : morgan_environments(m, 2)) {
      counts[env] += count;
    }
  }
  if (counts.empty()) return {};
  std::vector<long long> sorted;
  sorted.reserve(counts.size());
  for (const auto& [env, count] : counts) sorted.push_back(count);
  std::sort(sorted.begin(), sorted.end());
  const std::size_t idx =
      std::min(sorted.size() - 1,
               static_cast<std::size_t>(0.8 * static_cast<double>(sorted.size())));
  const double p80 = std::max<double>(1.0, static_cast<double>(sorted[idx]));
  SaFragmentTable table;
  for (const auto& [env, count] : counts) {
    const double v = std::log10(static_cast<double>(count) / p80);
    table[env] = std::clamp(v, -4.0, 4.0);
  }
  return table;
}

void write_sa_table(const SaFragmentTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "# environment_id score\n";
  char buf[64];
  for (const auto& [env, score] : table) {
    std::snprintf(buf, sizeof(buf), "%llu\t%.6f\n",
                  static_cast<unsigned long long>(env), score);
    out << buf;
  }
}

SaFragmentTable read_sa_table(const std::string& path) {
  SaFragmentTable table;
  verify_table_checksum(path);
  for (const std::string& line : read_table_lines(path)) {
    unsigned long long env = 0;
    double score = 0.0;
    if (std::sscanf(line.c_str(), "%llu\t%lf", &env, &score) == 2) {
      table[static_cast<uint64_t>(env)] = score;
    }
  }
  return table;
}

double sa_score(const MolGraph& m, const SaFragmentTable& table) {
  if (m.empty()) return 10.0;
  MolGraph storage;
  const MolGraph* g = &m;
  if (!m.perceived()) {
    storage = perceived_copy(m);
    g = &storage;
  }
  int heavy = 0;
  for (int i = 0; i < g->atom_count(); ++i) {
    if (g->atom(i).element != Element::H) ++heavy;
  }
  if (heavy == 0) return 10.0;

  const auto envs = morgan_environments(*g, 2);
  long long total = 0;
  double weighted = 0.0;
  for (const auto& [env, count] : envs) {
    const auto it = table.find(env);
    const double v = it == table.end() ? kMissingScore : it->second;
    weighted += v * count;
    total += count;
  }
  const double fragment_score = total > 0 ? weighted / static_cast<double>(total)
                                          : kMissingScore;

  const RingFeatures rf = ring_features(*g);
  const double n = static_cast<double>(heavy);
  const double size_penalty = std::pow(n, 1.005) - n;
  const double spiro_penalty = std::log10(rf.spiro + 1.0);
  const double bridge_penalty = std::log10(rf.bridgehead + 1.0);
  const double macro_penalty = rf.macrocycle ? std::log10(2.0) : 0.0;
  const double complexity_penalty =
      -size_penalty - spiro_penalty - bridge_penalty - macro_penalty;

  double symmetry_bonus = 0.0;
  if (heavy > static_cast<int>(envs.size())) {
    symmetry_bonus =
        0.5 * std::log(n / static_cast<double>(envs.size()));
  }

  const double raw = fragment_score + complexity_penalty + symmetry_bonus;
  // Affine map from the empirical raw range [-4, 2.5] onto [1, 10].
  double scaled = 11.0 - (raw + 5.0) / 7.5 * 9.0;
  if (scaled > 8.0) scaled = 8.0 + std::log(scaled + 1.0 - 9.0);
  return std::clamp(scaled, 1.0, 10.0);
}

double sa_score(const MolGraph& m) { return sa_score(m, sa_fragment_table()); }

double sa_normalized(const MolGraph& m, const SaFragmentTable& table) {
  return (10.0 - sa_score(m, table)) / 9.0;
}

double sa_normalized(const MolGraph& m) {
  return sa_normalized(m, sa_fragment_table());
}

}  // namespace mevo
