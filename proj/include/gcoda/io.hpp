// File formats: CSV matrices and edge lists, DOT/GraphML graph exports,
// atomic writes and content checksums.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gcoda/graph.hpp"
#include "gcoda/quotient.hpp"
#include "gcoda/regression.hpp"

namespace gcoda {

struct CsvTable {
  std::vector<std::string> header;  // empty when the file had none
  Matrix values;
};

/// Comma-separated numeric table, UTF-8. The first row is taken as a
/// header when any of its cells does not parse as a number.
CsvTable read_csv(const std::string& path);

/// As read_csv but the header row is mandatory (data matrices).
CsvTable read_csv_with_header(const std::string& path);

std::string format_full(double v);  // round-trip decimal (17 significant)

std::string csv_to_string(const Matrix& values,
                          const std::vector<std::string>& header);

/// Write-then-rename so readers never observe a partial file.
void atomic_write(const std::string& path, const std::string& content);

void write_csv(const std::string& path, const Matrix& values,
               const std::vector<std::string>& header);

/// Edge-list CSV with 1-based indices; columns i, j, w (header optional on
/// read, written on write). dimension, when absent, is the largest index.
std::vector<Edge> read_edge_list(const std::string& path, int* dimension);
void write_edge_list(const std::string& path, const std::vector<Edge>& edges);

WeightMatrix weights_from_csv(const std::string& path,
                              std::vector<std::string>* names);
WeightMatrix weights_from_edge_list(const std::string& path,
                                    std::optional<int> dimension);

/// Contrast rows as a K x D CSV (no header needed).
Matrix contrast_rows_from_csv(const std::string& path);

/// Contrast matrix from a JSON description with 1-based indices:
/// {"dimension": D,
///  "weighted_combinations": [{"anchor": i, "weights": {"j": w, ...}}, ...],
///  "ratio_subsets": [[{"i": i, "j": j, "w": w}, ...], ...]}
/// Rows from both sections are stacked in order.
ContrastMatrix contrast_from_json(const std::string& path);

/// FNV-1a 64-bit checksum of the file bytes, hex encoded.
std::string file_checksum(const std::string& path);

struct StyledEdge {
  std::string from;
  std::string to;
  double weight = 0.0;  // signed
  double width = 0.0;   // display width, nonnegative
};

/// Graphviz export; positive weights red, negative blue, width as given.
std::string dot_graph(const std::vector<std::string>& nodes,
                      const std::vector<StyledEdge>& edges);

std::string graphml_graph(const std::vector<std::string>& nodes,
                          const std::vector<StyledEdge>& edges);

}  // namespace gcoda
