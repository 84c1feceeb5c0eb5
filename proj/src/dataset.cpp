#include "paczk/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "paczk/errors.hpp"

namespace paczk {

void Dataset::validate() const {
  if (x.size() != n * d) throw DataError("Dataset: point grid size disagrees with n*d");
  if (!labels.empty() && labels.size() != n)
    throw DataError("Dataset: label count disagrees with n");
  require_finite(x, "dataset points");
}

void DbTable::validate() const {
  schema.validate();
  if (rows.size() != n * schema.size()) throw DataError("DbTable: row grid size mismatch");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < schema.size(); ++k) {
      const double v = rows[i * schema.size() + k];
      if (!std::isfinite(v)) throw InvalidValue("table row");
      const auto& a = schema.attrs[k];
      if (v < a.span_min || v > a.span_max)
        throw DataError("DbTable: value " + std::to_string(v) + " outside span of " + a.name);
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // trim surrounding whitespace
    std::size_t b = cell.find_first_not_of(" \t\r");
    std::size_t e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_cell(const std::string& cell, const std::filesystem::path& file) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size())
    throw DataError("CSV " + file.string() + ": cannot parse number '" + cell + "'");
  return v;
}

struct CsvContent {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvContent read_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open " + file.string());
  CsvContent content;
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty CSV " + file.string());
  content.header = split_csv_line(line);
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != content.header.size())
      throw DataError("CSV " + file.string() + ": ragged row with " +
                      std::to_string(cells.size()) + " cells");
    content.rows.push_back(std::move(cells));
  }
  return content;
}

}  // namespace

Dataset load_dataset_csv(const std::filesystem::path& file,
                         const std::optional<std::string>& label_column) {
  const CsvContent csv = read_csv(file);
  std::optional<std::size_t> label_idx;
  if (label_column) {
    for (std::size_t i = 0; i < csv.header.size(); ++i)
      if (csv.header[i] == *label_column) label_idx = i;
    if (!label_idx)
      throw DataError("CSV " + file.string() + ": no label column '" + *label_column + "'");
  }

  Dataset ds;
  ds.n = csv.rows.size();
  ds.d = csv.header.size() - (label_idx ? 1 : 0);
  if (ds.n == 0 || ds.d == 0) throw DataError("CSV " + file.string() + ": no data");
  ds.x.reserve(ds.n * ds.d);
  if (label_idx) ds.labels.reserve(ds.n);
  for (const auto& row : csv.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (label_idx && i == *label_idx) {
        ds.labels.push_back(static_cast<int>(parse_cell(row[i], file)));
      } else {
        ds.x.push_back(parse_cell(row[i], file));
      }
    }
  }
  ds.validate();
  return ds;
}

AttributeSchema load_schema_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open " + file.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("schema " + file.string() + ": " + e.what());
  }
  AttributeSchema schema;
  if (!j.contains("attributes") || !j["attributes"].is_array())
    throw DataError("schema " + file.string() + ": missing attributes array");
  for (const auto& a : j["attributes"]) {
    AttributeSchema::Attribute attr;
    attr.name = a.at("name").get<std::string>();
    const std::string kind = a.at("kind").get<std::string>();
    if (kind == "integer")
      attr.kind = AttrKind::kInteger;
    else if (kind == "real")
      attr.kind = AttrKind::kReal;
    else
      throw DataError("schema " + file.string() + ": unknown kind '" + kind + "'");
    attr.span_min = a.at("span").at(0).get<double>();
    attr.span_max = a.at("span").at(1).get<double>();
    schema.attrs.push_back(std::move(attr));
  }
  schema.validate();
  return schema;
}

DbTable load_table_csv(const std::filesystem::path& file, const AttributeSchema& schema) {
  const CsvContent csv = read_csv(file);
  std::vector<std::size_t> col_of_attr(schema.size());
  for (std::size_t k = 0; k < schema.size(); ++k) {
    bool found = false;
    for (std::size_t i = 0; i < csv.header.size(); ++i)
      if (csv.header[i] == schema.attrs[k].name) {
        col_of_attr[k] = i;
        found = true;
      }
    if (!found)
      throw SchemaMismatch("CSV " + file.string() + " lacks column " + schema.attrs[k].name);
  }

  DbTable table;
  table.schema = schema;
  table.n = csv.rows.size();
  table.rows.reserve(table.n * schema.size());
  for (const auto& row : csv.rows)
    for (std::size_t k = 0; k < schema.size(); ++k)
      table.rows.push_back(parse_cell(row[col_of_attr[k]], file));
  table.validate();
  return table;
}

}  // namespace paczk
