#include "sphereform/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sphereform {

std::string format17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void CsvReport::add(const ReportRow& row) { rows_.push_back(row); }

void CsvReport::add_interval(const std::string& quantity, const CertifiedInterval& iv,
                             double delta, std::uint64_t seed, std::int64_t wall_ms) {
  rows_.push_back({quantity, iv.lower, iv.upper, iv.certified, delta, seed, wall_ms});
}

void CsvReport::add_value(const std::string& quantity, double value, std::uint64_t seed,
                          std::int64_t wall_ms) {
  rows_.push_back({quantity, value, value, true, 0.0, seed, wall_ms});
}

std::string CsvReport::to_string() const {
  std::ostringstream out;
  out << "quantity,lower,upper,certified,net_delta,seed,wall_time_ms\n";
  for (const ReportRow& r : rows_) {
    out << r.quantity << ',' << format17(r.lower) << ',' << format17(r.upper) << ','
        << (r.certified ? "true" : "false") << ',' << format17(r.net_delta) << ',' << r.seed
        << ',' << (include_timing_ ? r.wall_time_ms : 0) << '\n';
  }
  return out.str();
}

void CsvReport::write(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  require(f.good(), "CsvReport: cannot open " + path);
  f << to_string();
}

}  // namespace sphereform
