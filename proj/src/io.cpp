#include "vml/io.hpp"

#include "vml/errors.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace vml {

std::string fmt17(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size()) throw ValidationError("csv: header and column count differ");
  const std::size_t n = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns)
    if (c.size() != n) throw ValidationError("csv: columns differ in length");
  for (std::size_t j = 0; j < header.size(); ++j) os << (j ? "," : "") << header[j];
  os << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) os << (j ? "," : "") << fmt17(columns[j][i]);
    os << '\n';
  }
}

void write_csv_file(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& columns) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot open '" + path + "' for writing");
  write_csv(f, header, columns);
}

nlohmann::json equilibrium_json(const EquilibriumConfig& cfg) {
  nlohmann::json j;
  switch (cfg.kind) {
    case EquilibriumKind::maxwellian: j["kind"] = "maxwellian"; break;
    case EquilibriumKind::power_law:
      j["kind"] = "powerlaw";
      j["M"] = cfg.M;
      break;
    case EquilibriumKind::tabulated:
      j["kind"] = "tabulated";
      j["table_s"] = cfg.table_s;
      j["table_phi"] = cfg.table_phi;
      break;
  }
  j["n0"] = cfg.n0;
  return j;
}

std::string equilibrium_hash(const EquilibriumConfig& cfg) {
  const std::string s = equilibrium_json(cfg).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

nlohmann::json metadata(const EquilibriumConfig& cfg, const nlohmann::json& tolerances) {
  nlohmann::json j;
  j["equilibrium"] = equilibrium_json(cfg);
  j["equilibrium_hash"] = equilibrium_hash(cfg);
  j["version"] = kVersion;
  j["tolerances"] = tolerances;
  return j;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot open '" + path + "' for writing");
  f << j.dump(2) << '\n';
}

}  // namespace vml
