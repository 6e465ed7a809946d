#pragma once

#include <map>
#include <string>

namespace mevo {

// Index of known compounds keyed by canonical key.  Persisted as a two
// column TSV (key, source id) so novelty checks survive across sessions.
class CompoundStore {
 public:
  static CompoundStore load(const std::string& path);

  // Returns false when the key was already present.
  bool add(const std::string& key, const std::string& source_id);
  bool contains(const std::string& key) const { return entries_.count(key) != 0; }
  std::size_t size() const { return entries_.size(); }

  const std::map<std::string, std::string>& entries() const { return entries_; }

  void save(const std::string& path) const;

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace mevo
