#pragma once

#include <string>
#include <vector>

#include "mevo/descriptors.hpp"
#include "mevo/store.hpp"

namespace mevo {

struct Appraisal {
  std::string smiles;
  DescriptorVector descriptors;
  bool mw_ok = false;    // MW <= 500
  bool logp_ok = false;  // LogP <= 5
  bool hbd_ok = false;   // HBD <= 5
  bool hba_ok = false;   // HBA <= 10
  bool lipinski_pass = false;  // all four rules hold
  std::vector<std::string> alerts;  // names of matched alert patterns
  bool novel = false;               // absent from the compound store
};

Appraisal appraise_compound(const MolGraph& m);

struct AppraiseSummary {
  long long total = 0;
  long long lipinski_pass = 0;
  long long alert_free = 0;
  long long novel = 0;
  long long novel_lipinski_pass = 0;
};

// Reads the `smiles` column of a pareto.csv (or any CSV with that column),
// appraises each compound offline against the rule set and the store, and
// writes appraise.csv next to the caller's choice of path.
AppraiseSummary appraise_file(const std::string& pareto_csv, const CompoundStore& store,
                              const std::string& out_csv);

}  // namespace mevo
