#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mevo {

// Directory holding the bundled data tables (valence, Crippen, TPSA, QED
// parameters, alert patterns, tasks, corpus).  Resolution order:
//   1. MEVO_DATA_DIR environment variable,
//   2. the source-tree data directory baked in at configure time,
//   3. the install-tree data directory.
std::string data_dir();

std::string data_path(const std::string& relative);

// Reads a whole text file; throws std::runtime_error when unreadable.
std::string read_text_file(const std::string& path);

// Non-empty, non-comment lines of a table file ('#' starts a comment).
std::vector<std::string> read_table_lines(const std::string& path);

// FNV-1a checksum of the non-comment body of a table file.  Table headers
// carry the expected value as "# checksum: <hex>"; loaders warn on mismatch
// so silently edited tables are noticed.
std::uint64_t table_checksum(const std::vector<std::string>& lines);
void verify_table_checksum(const std::string& path);

// Minimal stderr logging used for graceful fallbacks.
void log_warn(const std::string& message);
void log_info(const std::string& message);

}  // namespace mevo
