#include "mevo/filter.hpp"

#include <algorithm>

#include "mevo/descriptors.hpp"

namespace mevo {

FilterChain::FilterChain(FilterConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.reject_alerts) alerts_ = default_alerts();
}

FilterDecision FilterChain::check(const MolGraph& m) const {
  const MolGraph* p = &m;
  MolGraph storage;
  if (!m.perceived()) {
    storage = perceived_copy(m);
    p = &storage;
  }

  if (p->atom_count() == 0) return {false, "empty"};
  if (!cfg_.allow_fragments && p->components().second > 1) return {false, "fragments"};

  for (const auto& atom : p->atoms()) {
    if (std::find(cfg_.allowed_elements.begin(), cfg_.allowed_elements.end(), atom.element) ==
        cfg_.allowed_elements.end())
      return {false, "element:" + std::string(element_symbol(atom.element))};
    if (!cfg_.allow_charged_atoms && atom.charge != 0) return {false, "charge"};
  }

  for (const auto& ring : p->rings()) {
    if (static_cast<int>(ring.atoms.size()) > cfg_.max_ring_size) return {false, "ring_size"};
  }

  double mw = molecular_weight(*p);
  if (mw < cfg_.mw_min) return {false, "mw_low"};
  if (mw > cfg_.mw_max) return {false, "mw_high"};
  if (crippen_logp(*p) >= cfg_.logp_max) return {false, "logp"};

  if (cfg_.reject_alerts) {
    for (const auto& pattern : alerts_) {
      if (has_match(*p, pattern)) return {false, "alert:" + pattern.name};
    }
  }
  return {true, ""};
}

}  // namespace mevo
