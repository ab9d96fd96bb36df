#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace loccmc::cli {

using nlohmann::json;

/// Result of one CLI run: experiment name, config echo and payload. Run
/// metadata that varies between identical runs (worker count, wall clock,
/// timestamp) is kept out of it and written to a sidecar instead.
struct ResultRecord {
    std::string experiment;
    json config;
    json payload;

    friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

void to_json(json& j, const ResultRecord& r);
void from_json(const json& j, ResultRecord& r);

struct RunMetadata {
    int workers = 1;
    double wall_clock_seconds = 0.0;
    std::string timestamp;  ///< UTC, ISO 8601
};

void to_json(json& j, const RunMetadata& m);

/// Numeric table with a header row. Emitted as UTF-8, LF line endings,
/// floats with 17 significant digits.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    friend bool operator==(const CsvTable&, const CsvTable&) = default;
};

/// Shortest decimal form that round-trips is not required; 17 significant
/// digits always round-trip a double.
std::string format_double(double v);

std::string emit_csv(const CsvTable& table);
CsvTable parse_csv(const std::string& text);

std::string emit_record(const ResultRecord& record);
ResultRecord parse_record(const std::string& text);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

std::string utc_timestamp();

}  // namespace loccmc::cli
