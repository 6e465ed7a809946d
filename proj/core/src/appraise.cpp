#include "mevo/appraise.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mevo/data.hpp"
#include "mevo/molgraph.hpp"

namespace mevo {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

Appraisal appraise_compound(const MolGraph& m) {
  const MolGraph* p = &m;
  MolGraph storage;
  if (!m.perceived() && m.atom_count() > 0) {
    storage = perceived_copy(m);
    p = &storage;
  }
  Appraisal a;
  a.smiles = p->atom_count() > 0 ? write_smiles(*p) : "";
  a.descriptors = compute_descriptors(*p);
  a.mw_ok = a.descriptors.mw <= 500.0;
  a.logp_ok = a.descriptors.logp <= 5.0;
  a.hbd_ok = a.descriptors.hbd <= 5;
  a.hba_ok = a.descriptors.hba <= 10;
  a.lipinski_pass = a.mw_ok && a.logp_ok && a.hbd_ok && a.hba_ok;
  for (const auto& pattern : default_alerts()) {
    if (has_match(*p, pattern)) a.alerts.push_back(pattern.name);
  }
  return a;
}

AppraiseSummary appraise_file(const std::string& pareto_csv, const CompoundStore& store,
                              const std::string& out_csv) {
  std::ifstream in(pareto_csv);
  if (!in) throw std::runtime_error("cannot read " + pareto_csv);

  std::ofstream out(out_csv, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + out_csv);
  out << "# source: " << pareto_csv << '\n';
  out << "smiles,mw,logp,hbd,hba,mw_ok,logp_ok,hbd_ok,hba_ok,lipinski_pass,alerts,novel\n";

  AppraiseSummary summary;
  std::string line;
  int smiles_col = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_csv(line);
    if (smiles_col < 0) {
      for (std::size_t i = 0; i < fields.size(); ++i)
        if (fields[i] == "smiles") smiles_col = static_cast<int>(i);
      if (smiles_col < 0)
        throw std::runtime_error(pareto_csv + ": no 'smiles' column in header: " + line);
      continue;
    }
    if (static_cast<std::size_t>(smiles_col) >= fields.size()) continue;
    const std::string& smiles = fields[static_cast<std::size_t>(smiles_col)];
    ++summary.total;
    if (smiles.empty()) continue;

    MolGraph m;
    try {
      m = parse_smiles(smiles);
    } catch (const std::exception& e) {
      log_warn("appraise: cannot parse '" + smiles + "': " + e.what());
      continue;
    }
    Appraisal a = appraise_compound(m);
    a.novel = !store.contains(a.smiles);

    if (a.lipinski_pass) ++summary.lipinski_pass;
    if (a.alerts.empty()) ++summary.alert_free;
    if (a.novel) ++summary.novel;
    if (a.novel && a.lipinski_pass) ++summary.novel_lipinski_pass;

    std::string alert_names;
    for (const auto& name : a.alerts) {
      if (!alert_names.empty()) alert_names += '|';
      alert_names += name;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", a.descriptors.mw);
    out << smiles << ',' << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.12g", a.descriptors.logp);
    out << buf << ',' << a.descriptors.hbd << ',' << a.descriptors.hba << ',' << a.mw_ok << ','
        << a.logp_ok << ',' << a.hbd_ok << ',' << a.hba_ok << ',' << a.lipinski_pass << ','
        << alert_names << ',' << a.novel << '\n';
  }
  return summary;
}

}  // namespace mevo
