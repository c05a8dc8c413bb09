
#include "gcoda/io.hpp"

#include <json.hpp>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace gcoda {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  std::string out = s.substr(a, b - a);
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') {
    out = out.substr(1, out.size() - 2);
  }
  return out;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  cells.push_back(trim(cur));
  return cells;
}

bool parse_double(const std::string& cell, double* out) {
  if (cell.empty()) return false;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size() || errno == ERANGE) return false;
  *out = v;
  return true;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open file: " + path);
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!trim(line).empty()) lines.push_back(line);
  }
  return lines;
}

CsvTable parse_table(const std::string& path, bool header_required,
                     bool allow_empty = false) {
  const auto lines = read_lines(path);
  if (lines.empty()) {
    throw ValidationError("empty CSV file: " + path);
  }
  CsvTable table;
  std::size_t first_data = 0;
  const auto first_cells = split_line(lines[0]);
  bool first_is_numeric = true;
  for (const auto& c : first_cells) {
    double v;
    if (!parse_double(c, &v)) {
      first_is_numeric = false;
      break;
    }
  }
  if (!first_is_numeric) {
    table.header = first_cells;
    first_data = 1;
  } else if (header_required) {
    throw ValidationError(path + ": a header row with variable names is "
                          "required");
  }
  const std::size_t rows = lines.size() - first_data;
  if (rows == 0 && !allow_empty) {
    throw ValidationError(path + ": no data rows");
  }
  const std::size_t cols =
      table.header.empty() ? first_cells.size() : table.header.size();
  table.values = Matrix(static_cast<Eigen::Index>(rows),
                        static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const auto cells = split_line(lines[first_data + r]);
    if (cells.size() != cols) {
      throw ValidationError(path + ": row " + std::to_string(r + 1) +
                            " has " + std::to_string(cells.size()) +
                            " cells, expected " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      double v;
      if (!parse_double(cells[c], &v)) {
        throw ValidationError(path + ": cell (" + std::to_string(r + 1) +
                              "," + std::to_string(c + 1) +
                              ") is not a number: '" + cells[c] + "'");
      }
      table.values(static_cast<Eigen::Index>(r),
                   static_cast<Eigen::Index>(c)) = v;
    }
  }
  return table;
}

}  // namespace

CsvTable read_csv(const std::string& path) { return parse_table(path, false); }

CsvTable read_csv_with_header(const std::string& path) {
  return parse_table(path, true);
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_to_string(const Matrix& values,
                          const std::vector<std::string>& header) {
  std::ostringstream out;
  if (!header.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c > 0) out << ',';
      out << header[c];
    }
    out << '\n';
  }
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_full(values(r, c));
    }
    out << '\n';
  }
  return out.str();
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw ValidationError("cannot write file: " + tmp);
    }
    out << content;
    if (!out.good()) {
      throw ValidationError("write failed: " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw ValidationError("cannot move " + tmp + " into place: " +
                          std::strerror(errno));
  }
}

void write_csv(const std::string& path, const Matrix& values,
               const std::vector<std::string>& header) {
  atomic_write(path, csv_to_string(values, header));
}

std::vector<Edge> read_edge_list(const std::string& path, int* dimension) {
  const CsvTable table = parse_table(path, false, true);
  if (table.values.rows() == 0) {  // header-only file: the empty graph
    if (dimension != nullptr) *dimension = 0;
    return {};
  }
  if (table.values.cols() != 3) {
    throw ValidationError(path + ": an edge list needs exactly the columns "
                          "i, j, w");
  }
  std::vector<Edge> edges;
  int max_index = 0;
  for (Eigen::Index r = 0; r < table.values.rows(); ++r) {
    const double fi = table.values(r, 0);
    const double fj = table.values(r, 1);
    if (fi != std::floor(fi) || fj != std::floor(fj) || fi < 1 || fj < 1) {
      throw ValidationError(path + ": row " + std::to_string(r + 1) +
                            " does not hold 1-based integer vertex indices");
    }
    Edge e;
    e.i = static_cast<int>(fi) - 1;
    e.j = static_cast<int>(fj) - 1;
    e.w = table.values(r, 2);
    if (e.i == e.j) {
      throw ValidationError(path + ": row " + std::to_string(r + 1) +
                            " is a self-loop");
    }
    if (e.i > e.j) std::swap(e.i, e.j);
    max_index = std::max(max_index, e.j + 1);
    edges.push_back(e);
  }
  if (dimension != nullptr) *dimension = max_index;
  return edges;
}

void write_edge_list(const std::string& path, const std::vector<Edge>& edges) {
  std::ostringstream out;
  out << "i,j,w\n";
  for (const Edge& e : edges) {
    out << (e.i + 1) << ',' << (e.j + 1) << ',' << format_full(e.w) << '\n';
  }
  atomic_write(path, out.str());
}

WeightMatrix weights_from_csv(const std::string& path,
                              std::vector<std::string>* names) {
  const CsvTable table = read_csv(path);
  if (names != nullptr) *names = table.header;
  return WeightMatrix(table.values);
}

WeightMatrix weights_from_edge_list(const std::string& path,
                                    std::optional<int> dimension) {
  int inferred = 0;
  const auto edges = read_edge_list(path, &inferred);
  const int d = dimension.value_or(inferred);
  if (d < 1) {
    throw ValidationError(path + ": cannot infer the dimension from an "
                          "empty edge list; pass it explicitly");
  }
  return WeightMatrix::from_edges(d, edges);
}

Matrix contrast_rows_from_csv(const std::string& path) {
  return read_csv(path).values;
}

ContrastMatrix contrast_from_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open file: " + path);
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in, nullptr, true, true);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
  if (!doc.contains("dimension")) {
    throw ValidationError(path + ": 'dimension' is required");
  }
  const int d = doc["dimension"].get<int>();
  Matrix rows(0, d);
  const auto append = [&rows](const Matrix& more) {
    Matrix merged(rows.rows() + more.rows(), rows.cols());
    merged.topRows(rows.rows()) = rows;
    merged.bottomRows(more.rows()) = more;
    rows = std::move(merged);
  };
  if (doc.contains("weighted_combinations")) {
    std::vector<AnchorCombination> combs;
    for (const auto& item : doc["weighted_combinations"]) {
      AnchorCombination comb;
      comb.anchor = item.at("anchor").get<int>() - 1;
      for (const auto& [key, value] : item.at("weights").items()) {
        comb.weights.emplace_back(std::stoi(key) - 1, value.get<double>());
      }
      combs.push_back(std::move(comb));
    }
    append(contrast_from_weighted_combinations(d, combs).rows());
  }
  if (doc.contains("ratio_subsets")) {
    std::vector<std::vector<RatioTerm>> subsets;
    for (const auto& subset : doc["ratio_subsets"]) {
      std::vector<RatioTerm> terms;
      for (const auto& term : subset) {
        terms.push_back({term.at("i").get<int>() - 1,
                        term.at("j").get<int>() - 1,
                        term.at("w").get<double>()});
      }
      subsets.push_back(std::move(terms));
    }
    append(contrast_from_ratio_subsets(d, subsets).rows());
  }
  if (rows.rows() == 0) {
    throw ValidationError(path + ": no contrast rows found");
  }
  return ContrastMatrix::from_rows(std::move(rows));
}

std::string file_checksum(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("cannot open file: " + path);
  }
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(hash));
  return hex;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string dot_graph(const std::vector<std::string>& nodes,
                      const std::vector<StyledEdge>& edges) {
  std::ostringstream out;
  out << "graph model {\n  node [shape=circle];\n";
  for (const auto& n : nodes) {
    out << "  \"" << dot_escape(n) << "\";\n";
  }
  for (const auto& e : edges) {
    out << "  \"" << dot_escape(e.from) << "\" -- \"" << dot_escape(e.to)
        << "\" [color=" << (e.weight > 0 ? "red" : "blue")
        << ", penwidth=" << format_full(e.width)
        << ", tooltip=\"" << format_full(e.weight) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string graphml_graph(const std::vector<std::string>& nodes,
                          const std::vector<StyledEdge>& edges) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"w\" for=\"edge\" attr.name=\"weight\" "
         "attr.type=\"double\"/>\n"
      << "  <key id=\"width\" for=\"edge\" attr.name=\"width\" "
         "attr.type=\"double\"/>\n"
      << "  <key id=\"color\" for=\"edge\" attr.name=\"color\" "
         "attr.type=\"string\"/>\n"
      << "  <key id=\"label\" for=\"node\" attr.name=\"label\" "
         "attr.type=\"string\"/>\n"
      << "  <graph id=\"model\" edgedefault=\"undirected\">\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out << "    <node id=\"n" << i << "\"><data key=\"label\">"
        << xml_escape(nodes[i]) << "</data></node>\n";
  }
  for (const auto& e : edges) {
    std::size_t from = 0, to = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i] == e.from) from = i;
      if (nodes[i] == e.to) to = i;
    }
    out << "    <edge source=\"n" << from << "\" target=\"n" << to << "\">"
        << "<data key=\"w\">" << format_full(e.weight) << "</data>"
        << "<data key=\"width\">" << format_full(e.width) << "</data>"
        << "<data key=\"color\">" << (e.weight > 0 ? "red" : "blue")
        << "</data></edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

}  // namespace gcoda
