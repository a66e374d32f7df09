#pragma once
// CSV / JSON report emission. CSV bytes are deterministic for a fixed seed
// and config: floats at 17 significant digits, fixed row order, and timing
// zeroed unless explicitly requested.

#include <cstdint>
#include <string>
#include <vector>

#include "sphereform/numerics.hpp"

namespace sphereform {

std::string format17(double x);

struct ReportRow {
  std::string quantity;
  double lower = 0.0;
  double upper = 0.0;
  bool certified = false;
  double net_delta = 0.0;
  std::uint64_t seed = 0;
  std::int64_t wall_time_ms = 0;
};

class CsvReport {
 public:
  // include_timing = false writes wall_time_ms as 0 (byte-determinism)
  explicit CsvReport(bool include_timing = false) : include_timing_(include_timing) {}

  void add(const ReportRow& row);
  void add_interval(const std::string& quantity, const CertifiedInterval& iv, double delta,
                    std::uint64_t seed, std::int64_t wall_ms = 0);
  void add_value(const std::string& quantity, double value, std::uint64_t seed,
                 std::int64_t wall_ms = 0);

  std::string to_string() const;
  void write(const std::string& path) const;
  const std::vector<ReportRow>& rows() const { return rows_; }

 private:
  bool include_timing_;
  std::vector<ReportRow> rows_;
};

}  // namespace sphereform
