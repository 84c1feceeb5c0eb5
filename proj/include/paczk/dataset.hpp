#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paczk/query.hpp"

namespace paczk {

// n points in R^d, row-major, with optional class labels.
struct Dataset {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<double> x;
  std::vector<int> labels;  // empty when absent, otherwise size n

  bool has_labels() const { return !labels.empty(); }
  double at(std::size_t i, std::size_t j) const { return x[i * d + j]; }
  std::span<const double> point(std::size_t i) const { return {x.data() + i * d, d}; }
  void validate() const;
};

struct DbTable {
  AttributeSchema schema;
  std::size_t n = 0;
  std::vector<double> rows;  // n x schema.size(), row-major

  std::span<const double> row(std::size_t i) const {
    return {rows.data() + i * schema.size(), schema.size()};
  }
  void validate() const;  // values within spans
};

// Headered CSV; all columns are features except the optional label column.
Dataset load_dataset_csv(const std::filesystem::path& file,
                         const std::optional<std::string>& label_column);

// Schema sidecar: {"attributes":[{"name":...,"kind":"integer"|"real","span":[lo,hi]},...]}
AttributeSchema load_schema_json(const std::filesystem::path& file);

// Headered CSV matched to the schema by column name.
DbTable load_table_csv(const std::filesystem::path& file, const AttributeSchema& schema);

}  // namespace paczk
