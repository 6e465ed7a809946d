#pragma once

#include "mevo/descriptors.hpp"
#include "mevo/molgraph.hpp"

namespace mevo {

// Asymmetric double sigmoid desirability; parameters loaded per descriptor
// from the bundled table.
double qed_desirability(const std::string& descriptor, double x);

double qed(const DescriptorVector& d);
double qed(const MolGraph& m);  // empty molecule -> 0

}  // namespace mevo
