#include "mevo/data.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mevo/rng.hpp"

#ifndef MEVO_SOURCE_DATA_DIR
#define MEVO_SOURCE_DATA_DIR ""
#endif
#ifndef MEVO_INSTALL_DATA_DIR
#define MEVO_INSTALL_DATA_DIR ""
#endif

namespace mevo {

std::string data_dir() {
  if (const char* env = std::getenv("MEVO_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  namespace fs = std::filesystem;
  for (const char* candidate : {MEVO_SOURCE_DATA_DIR, MEVO_INSTALL_DATA_DIR}) {
    if (*candidate != '\0' && fs::exists(candidate)) return candidate;
  }
  return "data";
}

std::string data_path(const std::string& relative) {
  return data_dir() + "/" + relative;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::vector<std::string> read_table_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read table: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

std::uint64_t table_checksum(const std::vector<std::string>& lines) {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& line : lines) {
    for (unsigned char c : line) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= '\n';
    h *= 1099511628211ull;
  }
  return h;
}

void verify_table_checksum(const std::string& path) {
  std::ifstream in(path);
  if (!in) return;
  std::string line;
  std::string expected;
  while (std::getline(in, line)) {
    if (line.rfind("# checksum:", 0) == 0) {
      expected = line.substr(11);
      while (!expected.empty() && expected.front() == ' ') expected.erase(0, 1);
      while (!expected.empty() && (expected.back() == ' ' || expected.back() == '\r')) {
        expected.pop_back();
      }
      break;
    }
  }
  if (expected.empty()) return;
  char actual[32];
  std::snprintf(actual, sizeof(actual), "%016llx",
                static_cast<unsigned long long>(table_checksum(read_table_lines(path))));
  if (expected != actual) {
    log_warn("table checksum mismatch for " + path + " (expected " + expected +
             ", got " + actual + ")");
  }
}

void log_warn(const std::string& message) {
  std::fprintf(stderr, "[mevo] warning: %s\n", message.c_str());
}

void log_info(const std::string& message) {
  std::fprintf(stderr, "[mevo] %s\n", message.c_str());
}

}  // namespace mevo
