#include "boxseries/records.hpp"

#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace boxseries {

namespace {

nlohmann::ordered_json record_json(const EigenvalueRecord& rec) {
  nlohmann::ordered_json j;
  j["energy"] = rec.energy;
  j["kind"] = std::string(to_string(rec.kind));
  j["index"] = rec.index;
  j["I"] = rec.terms_used;
  j["L"] = to_string(rec.half_width);
  j["digits"] = rec.target_digits;
  j["working_digits"] = rec.working_digits;
  if (rec.stable_digits >= 0) {
    j["stable_digits"] = rec.stable_digits;
  } else {
    j["stable_digits"] = nullptr;
  }
  j["cancellation_digits"] = rec.cancellation_digits;
  j["converged"] = rec.converged;
  return j;
}

}  // namespace

std::string to_jsonl(const EigenvalueRecord& rec) { return record_json(rec).dump(); }

std::string to_jsonl(const SplittingReport& report) {
  nlohmann::ordered_json j;
  j["e_plus"] = record_json(report.plus);
  j["e_minus"] = record_json(report.minus);
  j["agree_digits"] = report.agree_digits;
  j["delta"] = report.delta;
  return j.dump();
}

std::string csv_header_records() {
  return "energy,kind,index,I,L,digits,working_digits,stable_digits,cancellation_digits,converged";
}

std::string to_csv_row(const EigenvalueRecord& rec) {
  return rec.energy + ',' + std::string(to_string(rec.kind)) + ',' + std::to_string(rec.index) + ',' +
         std::to_string(rec.terms_used) + ',' + to_string(rec.half_width) + ',' + std::to_string(rec.target_digits) +
         ',' + std::to_string(rec.working_digits) + ',' +
         (rec.stable_digits >= 0 ? std::to_string(rec.stable_digits) : std::string()) + ',' +
         std::to_string(rec.cancellation_digits) + ',' + (rec.converged ? "true" : "false");
}

std::string csv_header_splitting() { return "L,e_plus,e_minus,agree_digits,delta,digits"; }

std::string to_csv_row(const SplittingReport& report) {
  return to_string(report.plus.half_width) + ',' + report.plus.energy + ',' + report.minus.energy + ',' +
         std::to_string(report.agree_digits) + ',' + report.delta + ',' + std::to_string(report.plus.target_digits);
}

OutputFormat parse_output_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "jsonl") return OutputFormat::jsonl;
  throw std::invalid_argument("unknown output format '" + text + "' (expected csv or jsonl)");
}

void write_records(std::ostream& out, const std::vector<EigenvalueRecord>& records, OutputFormat format) {
  if (format == OutputFormat::csv) out << csv_header_records() << '\n';
  for (const auto& rec : records) out << (format == OutputFormat::csv ? to_csv_row(rec) : to_jsonl(rec)) << '\n';
}

void write_splittings(std::ostream& out, const std::vector<SplittingReport>& reports, OutputFormat format) {
  if (format == OutputFormat::csv) out << csv_header_splitting() << '\n';
  for (const auto& r : reports) out << (format == OutputFormat::csv ? to_csv_row(r) : to_jsonl(r)) << '\n';
}

}  // namespace boxseries
