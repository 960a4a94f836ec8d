#include "sublinear/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "sublinear/error.hpp"

namespace sublinear {
namespace {

std::string format_cell(const Json& cell) {
  if (cell.is_number_float()) return format_double(cell.get<double>());
  if (cell.is_number_integer()) return std::to_string(cell.get<std::int64_t>());
  if (cell.is_boolean()) return cell.get<bool>() ? "true" : "false";
  if (cell.is_string()) return cell.get<std::string>();
  if (cell.is_null()) return "";
  throw Error(ErrorCode::kInvalidArgument, "table cells must be scalars");
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

Json to_json(const Report& report) {
  Json doc;
  doc["command"] = report.command;
  doc["meta"] = report.meta;
  Json tables = Json::array();
  for (const Table& t : report.tables) {
    Json jt;
    jt["name"] = t.name;
    jt["columns"] = t.columns;
    Json rows = Json::array();
    for (const auto& row : t.rows) rows.push_back(Json(row));
    jt["rows"] = std::move(rows);
    tables.push_back(std::move(jt));
  }
  doc["tables"] = std::move(tables);
  return doc;
}

Report report_from_json(const Json& doc) {
  try {
    Report r;
    r.command = doc.at("command").get<std::string>();
    r.meta = doc.at("meta");
    for (const Json& jt : doc.at("tables")) {
      Table t;
      t.name = jt.at("name").get<std::string>();
      t.columns = jt.at("columns").get<std::vector<std::string>>();
      for (const Json& row : jt.at("rows")) {
        std::vector<Json> cells(row.begin(), row.end());
        if (cells.size() != t.columns.size()) {
          throw Error(ErrorCode::kConfig, "table " + t.name + ": row width mismatch");
        }
        t.rows.push_back(std::move(cells));
      }
      r.tables.push_back(std::move(t));
    }
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("malformed report: ") + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(ErrorCode::kConfig, "out: cannot write " + tmp.string());
    os << contents;
    os.flush();
    if (!os) throw Error(ErrorCode::kConfig, "out: write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kConfig, "out: cannot rename to " + path.string());
}

std::vector<std::filesystem::path> write_report(const Report& report,
                                                const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kConfig, "out: cannot create directory " + dir.string());
  std::vector<std::filesystem::path> written;
  for (const Table& t : report.tables) {
    const auto p = dir / (t.name + ".csv");
    write_file_atomic(p, to_csv(t));
    written.push_back(p);
  }
  const auto jp = dir / (report.command + ".json");
  write_file_atomic(jp, to_json(report).dump(2) + "\n");
  written.push_back(jp);
  return written;
}

}  // namespace sublinear
