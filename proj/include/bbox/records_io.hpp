#pragma once

/// CSV and JSON persistence of run records and summaries. Output is byte-stable for
/// equal inputs.

#include <string>
#include <string_view>
#include <vector>

#include "bbox/harness.hpp"
#include "bbox/model.hpp"

namespace bbox {

inline constexpr std::string_view records_csv_header =
    "algo,n,mu,lambda,seed,trial,queries,generations,success,failure_cause";

/// Header line plus one line per record; success is written as 1 or 0.
std::string records_to_csv(const std::vector<RunRecord>& records);
/// Array of objects keyed like the CSV columns; success is a JSON boolean.
std::string records_to_json(const std::vector<RunRecord>& records);

/// Inverse of records_to_csv. Throws ConfigError on malformed input.
std::vector<RunRecord> records_from_csv(std::string_view text);
std::vector<RunRecord> records_from_json(std::string_view text);

std::string emit_records(const std::vector<RunRecord>& records, OutputFormat format);

/// One line per (algo, n) with the quantiles, success rate, failure histogram and the
/// algorithm's fitted slopes.
std::string summary_to_csv(const Summary& summary);
std::string summary_to_json(const Summary& summary);

std::string emit_summary(const Summary& summary, OutputFormat format);

/// Writes text to path, replacing the file. Throws std::runtime_error on I/O failure.
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace bbox
