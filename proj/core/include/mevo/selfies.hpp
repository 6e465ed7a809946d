#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mevo/molgraph.hpp"

namespace mevo {

// A genome is a sequence of SELFIES symbols ("[C]", "[=Branch1]", ...).
using Genome = std::vector<std::string>;

// Split a SELFIES string into bracketed symbols.  Throws ParseError on any
// text outside brackets or an unterminated bracket.
Genome tokenize_selfies(const std::string& text);

std::string join_selfies(const Genome& genome);

// Every genome decodes to a molecule; untranslatable trailing symbols are
// skipped rather than rejected.  The result may be empty (no atoms placed).
MolGraph decode_selfies(const Genome& genome, const ValenceTable& table);
MolGraph decode_selfies(const Genome& genome);

// Encode a Kekulé molecular graph as SELFIES.  The graph must pass
// valence_valid; decoding the result reproduces the same canonical key.
Genome encode_selfies(const MolGraph& m);

// Index interpretation used by branch lengths and ring distances: each
// symbol maps to a digit in [0, 16), unknown symbols map to 0, and a run of
// N symbols reads as a base-16 number.
int selfies_symbol_index(const std::string& symbol);
std::vector<std::string> selfies_index_symbols(int value, int width);

// Symbols the mutation operator may draw from.  Loaded once from the data
// table `selfies_alphabet.tsv`; atoms only (no branch/ring controls) when
// `atoms_only` is set.
const std::vector<std::string>& selfies_alphabet();
const std::vector<std::string>& selfies_atom_alphabet();

}  // namespace mevo
