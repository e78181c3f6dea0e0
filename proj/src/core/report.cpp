#include "core/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"

namespace rispeb {

namespace {

constexpr const char* kCsvHeader = "scenario,method,axis,value,peb_m,iters,wall_ms,seed";

double parse_float9(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  return std::stod(s);
}

}  // namespace

std::string format_float9(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

bool rows_equal(const ReportRow& a, const ReportRow& b) {
  return a.scenario == b.scenario && a.method == b.method && a.axis == b.axis &&
         format_float9(a.value) == format_float9(b.value) &&
         format_float9(a.peb_m) == format_float9(b.peb_m) && a.iters == b.iters &&
         format_float9(a.wall_ms) == format_float9(b.wall_ms) && a.seed == b.seed;
}

bool rows_equal(const std::vector<ReportRow>& a, const std::vector<ReportRow>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!rows_equal(a[k], b[k])) return false;
  return true;
}

std::string emit_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const auto& r : rows) {
    out << r.scenario << ',' << r.method << ',' << r.axis << ',' << format_float9(r.value) << ','
        << format_float9(r.peb_m) << ',' << r.iters << ',' << format_float9(r.wall_ms) << ','
        << r.seed << "\n";
  }
  return out.str();
}

std::string emit_json(const std::vector<ReportRow>& rows) {
  // Written by hand so that float formatting matches the CSV exactly
  // (including the "inf" sentinel, which JSON numbers cannot carry).
  std::ostringstream out;
  out << "[\n";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    out << "  {\"scenario\": \"" << r.scenario << "\", \"method\": \"" << r.method
        << "\", \"axis\": \"" << r.axis << "\", \"value\": " << format_float9(r.value)
        << ", \"peb_m\": ";
    if (std::isinf(r.peb_m))
      out << "\"inf\"";
    else
      out << format_float9(r.peb_m);
    out << ", \"iters\": " << r.iters << ", \"wall_ms\": " << format_float9(r.wall_ms)
        << ", \"seed\": " << r.seed << "}";
    out << (k + 1 < rows.size() ? ",\n" : "\n");
  }
  out << "]\n";
  return out.str();
}

std::string emit_report(const std::vector<ReportRow>& rows, const std::string& format) {
  if (format == "csv") return emit_csv(rows);
  if (format == "json") return emit_json(rows);
  throw InvalidArgument("unknown report format '" + format + "'");
}

void emit_report_file(const std::vector<ReportRow>& rows, const std::string& format,
                      const std::string& path) {
  const std::string text = emit_report(rows, format);
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write report file '" + path + "'");
  out << text;
  if (!out) throw IoError("failed writing report file '" + path + "'");
}

std::vector<ReportRow> parse_csv(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line)) throw ParseError("empty csv");
  if (line != kCsvHeader) throw ParseError("unexpected csv header '" + line + "'");
  std::vector<ReportRow> rows;
  int line_no = 1;
  while (std::getline(ss, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 8) throw ParseError("csv row needs 8 fields", line_no);
    ReportRow r;
    r.scenario = fields[0];
    r.method = fields[1];
    r.axis = fields[2];
    r.value = parse_float9(fields[3]);
    r.peb_m = parse_float9(fields[4]);
    r.iters = std::stoll(fields[5]);
    r.wall_ms = parse_float9(fields[6]);
    r.seed = std::stoull(fields[7]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ReportRow> parse_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
  if (!j.is_array()) throw ParseError("expected a json array of rows");
  std::vector<ReportRow> rows;
  for (const auto& item : j) {
    ReportRow r;
    r.scenario = item.at("scenario").get<std::string>();
    r.method = item.at("method").get<std::string>();
    r.axis = item.at("axis").get<std::string>();
    r.value = item.at("value").get<double>();
    const auto& peb = item.at("peb_m");
    r.peb_m = peb.is_string() ? std::numeric_limits<double>::infinity() : peb.get<double>();
    r.iters = item.at("iters").get<long long>();
    r.wall_ms = item.at("wall_ms").get<double>();
    r.seed = item.at("seed").get<std::uint64_t>();
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace rispeb
