#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "jroc/cost_context.hpp"
#include "jroc/experiment.hpp"
#include "jroc/rank_stats.hpp"

namespace jroc {

/// Points CSV: "# schema=1" comment, then
/// model_id,config_bitstring,tc,mc -- one row per evaluated configuration.
std::string points_to_csv(std::span<const CostPoint> points);
std::vector<CostPoint> points_from_csv(const std::string& text);
void write_points_csv(const std::filesystem::path& path, std::span<const CostPoint> points);
std::vector<CostPoint> read_points_csv(const std::filesystem::path& path);

/// Raw result matrix: method rows x labelled run columns.
std::string mdat_to_csv(const MethodResultMatrix& mrm);

/// Long-format aggregate table: key column (dataset or alpha), method, mean, sd.
std::string aggregates_to_csv(const std::vector<AggregateRow>& rows,
                              const std::string& key_column);

/// Per-cell means: dataset,alpha,Full..RND rows plus a trailing Avg row.
std::string cells_to_csv(const CellTable& table);

/// Reads a cells CSV back into a value matrix for rank statistics. Skips the
/// schema comment and any Avg row; returns the method names from the header.
struct CellsFile {
  std::vector<std::string> method_names;
  std::vector<std::string> row_labels;  // "dataset:alpha"
  std::vector<std::vector<double>> values;
};
CellsFile read_cells_csv(const std::filesystem::path& path);

}  // namespace jroc
