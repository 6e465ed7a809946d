#include "mevo/qed.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "mevo/data.hpp"

namespace mevo {

namespace {

struct AdsParams {
  double a, b, c, d, e, f, dmax;
};

const std::map<std::string, AdsParams>& ads_table() {
  static const std::map<std::string, AdsParams> table = [] {
    std::map<std::string, AdsParams> out;
    const std::string path = data_path("qed_ads.tsv");
    verify_table_checksum(path);
    for (const std::string& line : read_table_lines(path)) {
      std::string name;
      AdsParams p{};
      std::size_t pos = line.find('\t');
      if (pos == std::string::npos) continue;
      name = line.substr(0, pos);
      if (std::sscanf(line.c_str() + pos + 1, "%lf\t%lf\t%lf\t%lf\t%lf\t%lf\t%lf",
                      &p.a, &p.b, &p.c, &p.d, &p.e, &p.f, &p.dmax) == 7) {
        out[name] = p;
      }
    }
    if (out.size() != 8) {
      throw std::runtime_error("qed_ads.tsv must define 8 descriptor rows");
    }
    return out;
  }();
  return table;
}

double ads(double x, const AdsParams& p) {
  const double left = 1.0 + std::exp(-(x - p.c + p.d / 2.0) / p.e);
  const double right = 1.0 + std::exp(-(x - p.c - p.d / 2.0) / p.f);
  return (p.a + p.b / left * (1.0 - 1.0 / right)) / p.dmax;
}

}  // namespace

double qed_desirability(const std::string& descriptor, double x) {
  const auto it = ads_table().find(descriptor);
  if (it == ads_table().end()) {
    throw std::invalid_argument("no QED desirability for " + descriptor);
  }
  return ads(x, it->second);
}

double qed(const DescriptorVector& d) {
  const std::array<std::pair<const char*, double>, 8> inputs = {{
      {"MW", d.mw},
      {"ALOGP", d.logp},
      {"HBA", static_cast<double>(d.hba)},
      {"HBD", static_cast<double>(d.hbd)},
      {"PSA", d.tpsa},
      {"ROTB", static_cast<double>(d.rotatable_bonds)},
      {"AROM", static_cast<double>(d.aromatic_rings)},
      {"ALERTS", static_cast<double>(d.alerts)},
  }};
  double log_sum = 0.0;
  for (const auto& [name, x] : inputs) {
    const double v = std::max(qed_desirability(name, x), 1e-6);
    log_sum += std::log(v);
  }
  return std::exp(log_sum / 8.0);
}

double qed(const MolGraph& m) {
  if (m.empty()) return 0.0;
  return qed(compute_descriptors(m));
}

}  // namespace mevo
