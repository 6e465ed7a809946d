#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mevo/molgraph.hpp"
#include "mevo/pattern.hpp"

namespace mevo {

struct FilterConfig {
  double mw_min = 250.0;
  double mw_max = 350.0;
  double logp_max = 5.0;
  std::vector<Element> allowed_elements = {Element::C,  Element::N, Element::O, Element::F,
                                           Element::S,  Element::Cl, Element::Br};
  int max_ring_size = 8;
  bool allow_charged_atoms = false;
  bool allow_fragments = false;  // reject salts / disconnected inputs
  bool reject_alerts = true;
};

struct FilterDecision {
  bool pass = true;
  std::string reason;  // first failed rule, e.g. "mw_high" or "alert:nitro"
};

// Drug-likeness gate used when building the working subset: molecular weight
// window, lipophilicity ceiling, element whitelist, maximum ring size,
// neutral atoms only, single fragment, and structural alerts.
class FilterChain {
 public:
  explicit FilterChain(FilterConfig cfg = {});

  FilterDecision check(const MolGraph& m) const;
  const FilterConfig& config() const { return cfg_; }

 private:
  FilterConfig cfg_;
  std::vector<Pattern> alerts_;
};

}  // namespace mevo
