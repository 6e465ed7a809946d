#pragma once

#include <string>
#include <vector>

#include "mevo/molgraph.hpp"
#include "mevo/pattern.hpp"

namespace mevo {

struct DescriptorVector {
  double mw = 0.0;
  double logp = 0.0;
  double tpsa = 0.0;
  int hbd = 0;
  int hba = 0;
  int rotatable_bonds = 0;
  int aromatic_rings = 0;
  int rings = 0;
  int heavy_atoms = 0;
  int alerts = 0;
};

// All functions expect a perceived graph (aromatic flags + ring set present);
// compute_descriptors perceives a copy when needed.
double molecular_weight(const MolGraph& m);
double crippen_logp(const MolGraph& m);
double tpsa(const MolGraph& m);
int hbd(const MolGraph& m);
int hba(const MolGraph& m);
int rotatable_bonds(const MolGraph& m);
int aromatic_ring_count(const MolGraph& m);
int ring_count(const MolGraph& m);
int heavy_atom_count(const MolGraph& m);
int fluorine_count(const MolGraph& m);
int alert_count(const MolGraph& m, const std::vector<Pattern>& patterns);
int alert_count(const MolGraph& m);  // against the bundled default set

const std::vector<Pattern>& default_alerts();

DescriptorVector compute_descriptors(const MolGraph& m);

// Raw descriptor lookup by the names used in task files.  Throws
// std::invalid_argument for unknown names.
double descriptor_value(const MolGraph& m, const DescriptorVector& d,
                        const std::string& name);

// Crippen atom typing exposed for tests: returns the type id (e.g. "C18")
// assigned to each atom, implicit hydrogens typed via *_h companions.
std::string crippen_atom_type(const MolGraph& m, int atom);
std::string crippen_hydrogen_type(const MolGraph& m, int host_atom);

std::string tpsa_atom_type(const MolGraph& m, int atom);

}  // namespace mevo
