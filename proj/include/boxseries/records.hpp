#ifndef BOXSERIES_RECORDS_HPP
#define BOXSERIES_RECORDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "boxseries/eigensolver.hpp"

namespace boxseries {

// Energies are always written as decimal strings.

std::string to_jsonl(const EigenvalueRecord& rec);
std::string to_jsonl(const SplittingReport& report);

std::string csv_header_records();
std::string to_csv_row(const EigenvalueRecord& rec);
std::string csv_header_splitting();
std::string to_csv_row(const SplittingReport& report);

enum class OutputFormat { csv, jsonl };
OutputFormat parse_output_format(const std::string& text);

void write_records(std::ostream& out, const std::vector<EigenvalueRecord>& records, OutputFormat format);
void write_splittings(std::ostream& out, const std::vector<SplittingReport>& reports, OutputFormat format);

}  // namespace boxseries

#endif  // BOXSERIES_RECORDS_HPP
