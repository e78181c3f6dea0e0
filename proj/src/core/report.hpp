#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/schedule.hpp"

namespace rispeb {

struct OptimizerReport {
  std::string method;
  std::vector<double> objective_trace;  // error bound (m) per iteration, incl. start
  PhaseSchedule schedule;
  double final_peb = 0.0;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
  int iterations = 0;
  bool converged = false;
  bool line_search_warning = false;
};

struct ReportRow {
  std::string scenario;  // scenario fingerprint
  std::string method;
  std::string axis;
  double value = 0.0;
  double peb_m = 0.0;
  long long iters = 0;
  double wall_ms = 0.0;
  std::uint64_t seed = 0;
};

// Floats are serialized with 9 significant digits; +infinity as the literal
// "inf". Two rows compare equal when all fields match at that precision.
std::string format_float9(double v);
bool rows_equal(const ReportRow& a, const ReportRow& b);
bool rows_equal(const std::vector<ReportRow>& a, const std::vector<ReportRow>& b);

std::string emit_csv(const std::vector<ReportRow>& rows);
std::string emit_json(const std::vector<ReportRow>& rows);
std::string emit_report(const std::vector<ReportRow>& rows, const std::string& format);
void emit_report_file(const std::vector<ReportRow>& rows, const std::string& format,
                      const std::string& path);

std::vector<ReportRow> parse_csv(const std::string& text);
std::vector<ReportRow> parse_json(const std::string& text);

}  // namespace rispeb
