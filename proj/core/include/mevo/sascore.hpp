#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mevo/molgraph.hpp"

namespace mevo {

// Fragment-frequency model for synthetic accessibility.  Keys are Morgan
// radius-2 environment identifiers; values are log10 commonness scores.
using SaFragmentTable = std::map<uint64_t, double>;

const SaFragmentTable& sa_fragment_table();  // bundled default

// Builds a table from a corpus of molecules: per-environment counts are
// scored log10(count / 80th-percentile count), clamped to [-4, 4].
SaFragmentTable build_sa_table(const std::vector<MolGraph>& corpus);
void write_sa_table(const SaFragmentTable& table, const std::string& path);
SaFragmentTable read_sa_table(const std::string& path);

// Score in [1,10]; 1 = very easy to synthesize.  Empty molecule -> 10.
double sa_score(const MolGraph& m, const SaFragmentTable& table);
double sa_score(const MolGraph& m);

// (10 - sa_score) / 9, so 1 is best (maximization convention).
double sa_normalized(const MolGraph& m, const SaFragmentTable& table);
double sa_normalized(const MolGraph& m);

}  // namespace mevo
