#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace sublinear {

using Json = nlohmann::ordered_json;

// One CSV table. Cells are JSON scalars (number, string or boolean).
struct Table {
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

struct Report {
  std::string command;
  Json meta = Json::object();
  std::vector<Table> tables;
};

// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

std::string to_csv(const Table& table);

Json to_json(const Report& report);
// Inverse of to_json; CONFIG error on a malformed document.
Report report_from_json(const Json& doc);

// Writes <table.name>.csv for every table and <command>.json into `dir`, each
// through a temporary file renamed into place. Returns the written paths.
std::vector<std::filesystem::path> write_report(const Report& report,
                                                const std::filesystem::path& dir);

// Write-temp-rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace sublinear
