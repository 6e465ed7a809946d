#include "mevo/store.hpp"

#include <fstream>
#include <stdexcept>

#include "mevo/data.hpp"

namespace mevo {

CompoundStore CompoundStore::load(const std::string& path) {
  CompoundStore store;
  for (const std::string& line : read_table_lines(path)) {
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      store.entries_.emplace(line, "");
      continue;
    }
    store.entries_.emplace(line.substr(0, tab), line.substr(tab + 1));
  }
  return store;
}

bool CompoundStore::add(const std::string& key, const std::string& source_id) {
  return entries_.emplace(key, source_id).second;
}

void CompoundStore::save(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write compound store: " + path);
  out << "# canonical_key<TAB>source_id\n";
  for (const auto& [key, source] : entries_) out << key << '\t' << source << '\n';
}

}  // namespace mevo
