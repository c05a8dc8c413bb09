// gcoda: batch front door for compositional data analysis on graphs.
// Subcommands: laplacian, transform, learn, regress. Every run writes a
// manifest (config echo, version, input checksums) next to its outputs.

#include <omp.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "gcoda/io.hpp"
#include "gcoda/learn.hpp"
#include "gcoda/quotient.hpp"
#include "gcoda/regression.hpp"
#include "gcoda/transforms.hpp"

using json = nlohmann::json;
using namespace gcoda;

namespace {

struct WeightInput {
  std::string weights_path;
  std::string edges_path;
  std::optional<int> dimension;

  bool given() const { return !weights_path.empty() || !edges_path.empty(); }

  WeightMatrix load(std::vector<std::string>* names,
                    std::optional<int> expected_dim) const {
    if (!weights_path.empty()) {
      WeightMatrix w = weights_from_csv(weights_path, names);
      if (expected_dim && w.dim() != *expected_dim) {
        throw ValidationError("weight matrix dimension " +
                              std::to_string(w.dim()) +
                              " does not match the data (" +
                              std::to_string(*expected_dim) + " variables)");
      }
      return w;
    }
    std::optional<int> dim = dimension;
    if (!dim && expected_dim) dim = expected_dim;
    WeightMatrix w = weights_from_edge_list(edges_path, dim);
    if (expected_dim && w.dim() != *expected_dim) {
      throw ValidationError("edge list dimension " + std::to_string(w.dim()) +
                            " does not match the data (" +
                            std::to_string(*expected_dim) + " variables)");
    }
    return w;
  }

  std::vector<std::string> input_paths() const {
    std::vector<std::string> out;
    if (!weights_path.empty()) out.push_back(weights_path);
    if (!edges_path.empty()) out.push_back(edges_path);
    return out;
  }
};

void add_weight_options(CLI::App* cmd, WeightInput& in) {
  auto* w = cmd->add_option("--weights", in.weights_path,
                            "weight matrix CSV (D x D, header optional)");
  auto* e = cmd->add_option("--edges", in.edges_path,
                            "edge list CSV (columns i, j, w; 1-based)");
  cmd->add_option("--dimension", in.dimension,
                  "vertex count when the edge list does not mention "
                  "trailing vertices");
  w->excludes(e);
  e->excludes(w);
}

std::string out_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_outdir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw ValidationError("cannot create output directory " + dir + ": " +
                          ec.message());
  }
}

void write_manifest(const std::string& dir, const std::string& command,
                    const std::vector<std::string>& inputs,
                    const json& parameters,
                    const std::vector<std::string>& outputs) {
  json m;
  m["command"] = command;
  m["version"] = kVersion;
  m["parameters"] = parameters;
  json in = json::object();
  for (const auto& p : inputs) in[p] = file_checksum(p);
  m["inputs"] = in;
  m["outputs"] = outputs;
  atomic_write(out_path(dir, "manifest.json"), m.dump(2) + "\n");
}

std::vector<std::string> names_or_default(std::vector<std::string> names,
                                          int d) {
  if (static_cast<int>(names.size()) == d) return names;
  names.clear();
  for (int i = 0; i < d; ++i) names.push_back("v" + std::to_string(i + 1));
  return names;
}

// Positive data matrix with variable names; zeros replaced when requested.
struct DataInput {
  Matrix x;
  std::vector<std::string> names;
  long replaced = 0;
};

DataInput load_data(const std::string& path, double zero_value) {
  CsvTable table = read_csv_with_header(path);
  DataInput d;
  d.names = table.header;
  d.x = std::move(table.values);
  if (zero_value > 0.0) {
    d.replaced = zero_replace(d.x, zero_value);
  }
  for (Eigen::Index r = 0; r < d.x.rows(); ++r) {
    for (Eigen::Index c = 0; c < d.x.cols(); ++c) {
      if (!(d.x(r, c) > 0.0)) {
        throw ValidationError(path + ": nonpositive entry at row " +
                              std::to_string(r + 1) + ", column " +
                              std::to_string(c + 1) +
                              " (variable " +
                              d.names[static_cast<std::size_t>(c)] + ")");
      }
    }
  }
  return d;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    out.push_back(std::stoi(cell));
  }
  return out;
}

// ---------------------------------------------------------------- laplacian

int cmd_laplacian(const WeightInput& win, const std::string& outdir) {
  ensure_outdir(outdir);
  std::vector<std::string> names;
  const WeightMatrix w = win.load(&names, std::nullopt);
  names = names_or_default(std::move(names), w.dim());
  const Laplacian lap(w);

  write_csv(out_path(outdir, "laplacian.csv"), lap.matrix(), names);

  json comp;
  comp["dimension"] = lap.dim();
  comp["component_count"] = lap.components();
  json comps = json::array();
  for (const auto& c : lap.partition().components) {
    json one = json::array();
    for (int v : c) one.push_back(v + 1);
    comps.push_back(one);
  }
  comp["components"] = comps;
  json spectrum = json::array();
  for (int i = 0; i < lap.dim(); ++i) spectrum.push_back(lap.eigenvalues()[i]);
  comp["eigenvalues"] = spectrum;
  comp["zero_eigenvalues"] = lap.components();
  atomic_write(out_path(outdir, "components.json"), comp.dump(2) + "\n");

  write_manifest(outdir, "laplacian", win.input_paths(),
                 {{"dimension", lap.dim()}},
                 {"laplacian.csv", "components.json"});
  return 0;
}

// ---------------------------------------------------------------- transform

struct TransformArgs {
  std::string data_path;
  WeightInput win;
  std::string kind = "gilr1";
  double alpha = 0.0;
  double kappa = 1.0;
  double zero_value = 0.5;
  std::string pivots;
  bool invert = false;
  std::string coords_path;
  std::string outdir = ".";
};

std::vector<std::vector<int>> pivot_permutations(
    const Laplacian& lap, const std::vector<std::string>& names,
    const std::string& pivots) {
  auto perms = lap.partition().components;
  if (pivots.empty()) return perms;
  std::stringstream ss(pivots);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (name.empty()) continue;
    int idx = -1;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) idx = static_cast<int>(i);
    }
    if (idx < 0) {
      throw ValidationError("pivot variable '" + name +
                            "' is not a column of the data");
    }
    const int comp = lap.partition().component_of(idx);
    auto& perm = perms[static_cast<std::size_t>(comp)];
    perm.erase(std::remove(perm.begin(), perm.end(), idx), perm.end());
    perm.insert(perm.begin(), idx);
  }
  return perms;
}

int cmd_transform(const TransformArgs& args) {
  ensure_outdir(args.outdir);
  DataInput data = load_data(args.data_path, args.zero_value);
  const int d = static_cast<int>(data.x.cols());
  const WeightMatrix w = args.win.load(nullptr, d);
  const Laplacian lap(w);
  GraphSimplexSpec spec = GraphSimplexSpec::unit(lap.partition());
  spec.kappa.setConstant(args.kappa);

  if (!args.pivots.empty() && args.kind != "gilr1") {
    throw ValidationError("--pivots applies to the gilr1 transform only");
  }

  GilrBasis basis;
  bool fourier = false;
  if (args.kind == "clrw") {
    basis = make_weighted_clr(lap, args.alpha);
  } else if (args.kind == "gilr1") {
    basis = make_gilr1(lap, args.alpha,
                       pivot_permutations(lap, data.names, args.pivots));
  } else if (args.kind == "gilr2") {
    basis = make_gilr2(lap, args.alpha);
  } else if (args.kind == "fourier") {
    fourier = true;
  } else {
    throw ValidationError("unknown transform kind '" + args.kind +
                          "' (expected clrw, gilr1, gilr2 or fourier)");
  }

  json params{{"kind", args.kind},   {"alpha", args.alpha},
              {"kappa", args.kappa}, {"zero_replace", args.zero_value},
              {"pivots", args.pivots}, {"invert", args.invert},
              {"zeros_replaced", data.replaced}};
  std::vector<std::string> inputs = args.win.input_paths();
  inputs.insert(inputs.begin(), args.data_path);
  std::vector<std::string> outputs;

  if (args.invert) {
    if (fourier) {
      throw ValidationError("--invert is not defined for the fourier table; "
                            "use gilr2");
    }
    if (args.coords_path.empty()) {
      throw ValidationError("--invert needs --coords with the coordinate "
                            "file");
    }
    const CsvTable coords = read_csv(args.coords_path);
    const Matrix back = invert_rows(basis, coords.values, &spec);
    write_csv(out_path(args.outdir, "data_reconstructed.csv"), back,
              names_or_default({}, d));
    inputs.push_back(args.coords_path);
    outputs.push_back("data_reconstructed.csv");
    write_manifest(args.outdir, "transform", inputs, params, outputs);
    return 0;
  }

  Matrix coords;
  std::vector<std::string> coord_names;
  Matrix node_rows;  // one eigenvector per coordinate, for the node table
  Vector node_freqs;
  if (fourier) {
    // plain spectral projections of log x, ordered by ascending frequency
    const int n = static_cast<int>(data.x.rows());
    coords.resize(n, d);
    for (int r = 0; r < n; ++r) {
      const auto table =
          graph_fourier(data.x.row(r).transpose(), lap);
      for (int c = 0; c < d; ++c) coords(r, c) = table[c].projection;
    }
    for (int c = 0; c < d; ++c) {
      coord_names.push_back("fourier_" + std::to_string(c + 1));
    }
    node_rows = lap.eigenvectors().transpose();
    node_freqs = lap.eigenvalues();
  } else {
    coords = apply_rows(basis, data.x);
    for (int c = 0; c < basis.coords(); ++c) {
      coord_names.push_back(args.kind + "_" + std::to_string(c + 1));
    }
    if (args.kind == "gilr2") {
      node_rows.resize(basis.coords(), d);
      node_freqs.resize(basis.coords());
      for (int c = 0; c < basis.coords(); ++c) {
        const int src = d - 1 - c;
        node_rows.row(c) = lap.eigenvectors().col(src).transpose();
        node_freqs[c] = lap.eigenvalues()[src] + args.alpha;
      }
    }
  }

  write_csv(out_path(args.outdir, "coords.csv"), coords, coord_names);
  outputs.push_back("coords.csv");

  if (!fourier) {
    write_csv(out_path(args.outdir, "basis.csv"), basis.forward, data.names);
    outputs.push_back("basis.csv");
  }

  if (node_rows.size() > 0) {
    // per-coordinate node weights scaled into [-1, 1]
    std::ostringstream nw;
    nw << "coord,frequency,node,name,weight\n";
    for (Eigen::Index c = 0; c < node_rows.rows(); ++c) {
      const double peak = node_rows.row(c).cwiseAbs().maxCoeff();
      const double scale = peak > 0.0 ? 1.0 / peak : 1.0;
      for (int v = 0; v < d; ++v) {
        nw << (c + 1) << ',' << format_full(node_freqs[c]) << ',' << (v + 1)
           << ',' << data.names[static_cast<std::size_t>(v)] << ','
           << format_full(node_rows(c, v) * scale) << '\n';
      }
    }
    atomic_write(out_path(args.outdir, "node_weights.csv"), nw.str());
    outputs.push_back("node_weights.csv");
  }

  write_manifest(args.outdir, "transform", inputs, params, outputs);
  return 0;
}

// -------------------------------------------------------------------- learn

struct LearnArgs {
  std::string data_path;
  std::string config_path;
  std::string method;
  int max_edges = -1;
  double stop_r2 = 1.0 - 1e-10;
  double lambda = 0.1;
  double alpha = 1.0;
  double beta = 0.5;
  double zero_value = 0.5;
  bool pca = false;
  std::string outdir = ".";
};

void write_graph_csv(const std::string& path,
                     const std::vector<Edge>& edges,
                     const std::vector<std::string>& names,
                     const std::vector<double>* trace) {
  std::ostringstream out;
  out << "step,i,j,name_i,name_j,weight,cumulative_R2\n";
  for (std::size_t t = 0; t < edges.size(); ++t) {
    const Edge& e = edges[t];
    out << (t + 1) << ',' << (e.i + 1) << ',' << (e.j + 1) << ','
        << names[static_cast<std::size_t>(e.i)] << ','
        << names[static_cast<std::size_t>(e.j)] << ',' << format_full(e.w)
        << ',';
    if (trace != nullptr) out << format_full((*trace)[t + 1]);
    out << '\n';
  }
  atomic_write(path, out.str());
}

int cmd_learn(const LearnArgs& args_in) {
  LearnArgs args = args_in;
  ensure_outdir(args.outdir);
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in) {
      throw ValidationError("cannot open config: " + args.config_path);
    }
    json cfg = json::parse(in, nullptr, true, true);
    if (args.method.empty() && cfg.contains("method")) {
      args.method = cfg["method"].get<std::string>();
    }
    if (cfg.contains("maxEdges")) args.max_edges = cfg["maxEdges"].get<int>();
    if (cfg.contains("stopR2")) args.stop_r2 = cfg["stopR2"].get<double>();
    if (cfg.contains("lambda")) args.lambda = cfg["lambda"].get<double>();
    if (cfg.contains("alpha")) args.alpha = cfg["alpha"].get<double>();
    if (cfg.contains("beta")) args.beta = cfg["beta"].get<double>();
  }
  if (args.method.empty()) {
    throw ValidationError("learn: a method is required (stepwise, mb or "
                          "smooth)");
  }

  DataInput data = load_data(args.data_path, args.zero_value);
  const PreprocessedData pre = double_center(data.x, data.names);

  json params{{"method", args.method},
              {"zero_replace", args.zero_value},
              {"zeros_replaced", data.replaced}};
  std::vector<std::string> outputs;

  if (args.method == "stepwise") {
    StepwiseOptions opt;
    opt.max_edges = args.max_edges;
    opt.stop_r2 = args.stop_r2;
    const LearnedGraph learned = stepwise_select(pre, opt);
    for (std::size_t t = 1; t < learned.trace.size(); ++t) {
      if (learned.trace[t] < learned.trace[t - 1]) {
        throw NumericError("stepwise trace is not nondecreasing");
      }
    }
    write_graph_csv(out_path(args.outdir, "graph.csv"), learned.edges,
                    pre.names, &learned.trace);
    outputs.push_back("graph.csv");

    std::ostringstream tr;
    tr << (args.pca ? "step,r2,pca_cumvar\n" : "step,r2\n");
    Vector pca_curve;
    if (args.pca) pca_curve = pca_cumulative_variance(pre.z);
    for (std::size_t t = 0; t < learned.trace.size(); ++t) {
      tr << t << ',' << format_full(learned.trace[t]);
      if (args.pca) {
        tr << ','
           << format_full(t == 0 ? 0.0
                                 : pca_curve[static_cast<Eigen::Index>(
                                       std::min<std::size_t>(t, pca_curve.size()) -
                                       1)]);
      }
      tr << '\n';
    }
    atomic_write(out_path(args.outdir, "trace.csv"), tr.str());
    outputs.push_back("trace.csv");
    params["maxEdges"] = opt.max_edges;
    params["stopR2"] = opt.stop_r2;
    params["final_r2"] = learned.trace.back();
  } else if (args.method == "mb" || args.method == "smooth") {
    const WeightMatrix w =
        args.method == "mb" ? mb_select(pre, args.lambda)
                            : smooth_graph_learn(pre, args.alpha, args.beta);
    std::vector<Edge> edges = w.edge_list();
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      if (a.w != b.w) return a.w > b.w;
      return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    write_graph_csv(out_path(args.outdir, "graph.csv"), edges, pre.names,
                    nullptr);
    outputs.push_back("graph.csv");
    if (args.method == "mb") {
      params["lambda"] = args.lambda;
    } else {
      params["alpha"] = args.alpha;
      params["beta"] = args.beta;
    }
  } else {
    throw ValidationError("unknown learn method '" + args.method + "'");
  }

  write_manifest(args.outdir, "learn", {args.data_path}, params, outputs);
  return 0;
}

// ------------------------------------------------------------------ regress

struct RegressArgs {
  std::string data_path;
  std::string response_path;
  std::string graph_path;
  std::string ks;
  int reps = 100;
  double train_fraction = 2.0 / 3.0;
  double lambda = 0.0;
  std::uint64_t seed = 1;
  int model_k = -1;
  bool standardize_y = true;
  double zero_value = 0.5;
  std::string outdir = ".";
};

// Learned-graph files carry name columns, so the generic numeric CSV
// reader does not apply; pull i, j, weight out by header position.
std::vector<Edge> read_learned_graph(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open graph file: " + path);
  std::vector<Edge> edges;
  std::string line;
  int col_i = -1, col_j = -1, col_w = -1;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (first) {
      first = false;
      bool header = false;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c] == "i") { col_i = static_cast<int>(c); header = true; }
        if (cells[c] == "j") { col_j = static_cast<int>(c); header = true; }
        if (cells[c] == "w" || cells[c] == "weight") {
          col_w = static_cast<int>(c);
          header = true;
        }
      }
      if (header) {
        if (col_i < 0 || col_j < 0 || col_w < 0) {
          throw ValidationError(path + ": header must name columns i, j and "
                                "weight (or w)");
        }
        continue;
      }
      if (cells.size() == 3) {
        col_i = 0; col_j = 1; col_w = 2;  // bare i,j,w rows
      } else {
        throw ValidationError(path + ": cannot locate the i, j, weight "
                              "columns");
      }
    }
    Edge e;
    e.i = std::stoi(cells[static_cast<std::size_t>(col_i)]) - 1;
    e.j = std::stoi(cells[static_cast<std::size_t>(col_j)]) - 1;
    e.w = std::stod(cells[static_cast<std::size_t>(col_w)]);
    if (e.i < 0 || e.j < 0 || e.i >= dim || e.j >= dim) {
      throw ValidationError(path + ": edge (" + std::to_string(e.i + 1) +
                            "," + std::to_string(e.j + 1) +
                            ") names an unknown vertex");
    }
    if (e.i > e.j) std::swap(e.i, e.j);
    edges.push_back(e);
  }
  if (edges.empty()) {
    throw ValidationError(path + ": the graph has no edges");
  }
  return edges;
}

int cmd_regress(const RegressArgs& args) {
  ensure_outdir(args.outdir);
  DataInput data = load_data(args.data_path, args.zero_value);
  const int d = static_cast<int>(data.x.cols());
  const int n = static_cast<int>(data.x.rows());

  const CsvTable ytab = read_csv(args.response_path);
  if (ytab.values.cols() != 1) {
    throw ValidationError(args.response_path +
                          ": the response must be a single column");
  }
  Vector y = ytab.values.col(0);
  if (y.size() != n) {
    throw ValidationError("response has " + std::to_string(y.size()) +
                          " rows, data has " + std::to_string(n));
  }
  if (args.standardize_y) {
    const double mean = y.mean();
    const double sd = std::sqrt((y.array() - mean).square().sum() /
                                (y.size() - 1.0));
    if (!(sd > 0.0)) {
      throw ValidationError("response is constant; cannot standardize");
    }
    y = (y.array() - mean) / sd;
  }

  LearnedGraph learned;
  learned.edges = read_learned_graph(args.graph_path, d);
  learned.trace.assign(learned.edges.size() + 1, 0.0);
  learned.weights = WeightMatrix::from_edges(d, learned.edges);
  const int total_edges = static_cast<int>(learned.edges.size());

  std::vector<int> ks = parse_int_list(args.ks);
  if (ks.empty()) {
    for (int k = 1; k <= total_edges; ++k) ks.push_back(k);
  }

  const SplitEvaluation eval =
      evaluate_splits(data.x, y, learned, ks, args.reps, args.train_fraction,
                      args.lambda, args.seed);

  // tidy per-repetition table; baseline rows leave k empty
  std::ostringstream mse;
  mse << "repetition,k,method,mse\n";
  for (int rep = 0; rep < eval.repetitions; ++rep) {
    mse << (rep + 1) << ",,zerosum," << format_full(eval.baseline_mse[rep])
        << '\n';
    for (std::size_t ki = 0; ki < ks.size(); ++ki) {
      mse << (rep + 1) << ',' << ks[ki] << ",graph,"
          << format_full(eval.graph_mse(rep, static_cast<Eigen::Index>(ki)))
          << '\n';
    }
  }
  atomic_write(out_path(args.outdir, "mse.csv"), mse.str());

  std::ostringstream summary;
  summary << "k,mean_mse_graph,mean_mse_zerosum\n";
  for (std::size_t ki = 0; ki < ks.size(); ++ki) {
    summary << ks[ki] << ','
            << format_full(eval.graph_mean[static_cast<Eigen::Index>(ki)])
            << ',' << format_full(eval.baseline_mean) << '\n';
  }
  atomic_write(out_path(args.outdir, "mse_summary.csv"), summary.str());

  // displayed model from the full data at the chosen k
  const int model_k = args.model_k > 0 ? args.model_k : total_edges;
  if (model_k > total_edges) {
    throw ValidationError("--model-k exceeds the number of graph edges");
  }
  std::vector<Edge> sub(learned.edges.begin(),
                        learned.edges.begin() + model_k);
  const WeightMatrix wk = WeightMatrix::from_edges(d, sub);
  const Laplacian lapk(wk);
  const AitchisonModel full_fit = fit_zerosum(data.x, y, args.lambda);
  const Vector b = project_coefficients(full_fit, lapk);
  const auto table = model_graph(b, wk, double_center(data.x, data.names));

  std::ostringstream mg;
  mg << "i,j,name_i,name_j,w_tilde,sigma,display_weight,sign\n";
  std::vector<StyledEdge> styled;
  double peak = 0.0;
  for (const auto& e : table) {
    peak = std::max(peak, e.sigma * std::abs(e.weight));
  }
  for (const auto& e : table) {
    const double disp = e.sigma * std::abs(e.weight);
    mg << (e.i + 1) << ',' << (e.j + 1) << ','
       << data.names[static_cast<std::size_t>(e.i)] << ','
       << data.names[static_cast<std::size_t>(e.j)] << ','
       << format_full(e.weight) << ',' << format_full(e.sigma) << ','
       << format_full(disp) << ',' << (e.weight > 0 ? "positive" : "negative")
       << '\n';
    styled.push_back({data.names[static_cast<std::size_t>(e.i)],
                      data.names[static_cast<std::size_t>(e.j)], e.weight,
                      peak > 0.0 ? 0.5 + 5.0 * disp / peak : 1.0});
  }
  atomic_write(out_path(args.outdir, "model_graph.csv"), mg.str());
  atomic_write(out_path(args.outdir, "model_graph.dot"),
               dot_graph(data.names, styled));
  atomic_write(out_path(args.outdir, "model_graph.graphml"),
               graphml_graph(data.names, styled));

  json params{{"reps", args.reps},
              {"train_fraction", args.train_fraction},
              {"lambda", args.lambda},
              {"seed", args.seed},
              {"model_k", model_k},
              {"standardize_y", args.standardize_y},
              {"zero_replace", args.zero_value},
              {"zeros_replaced", data.replaced},
              {"ks", ks}};
  write_manifest(args.outdir, "regress",
                 {args.data_path, args.response_path, args.graph_path},
                 params,
                 {"mse.csv", "mse_summary.csv", "model_graph.csv",
                  "model_graph.dot", "model_graph.graphml"});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compositional data analysis on weighted graphs"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "OpenMP thread count (0 = default)");

  // laplacian
  auto* lp = app.add_subcommand("laplacian",
                                "Laplacian, components and spectrum of a "
                                "weight matrix");
  WeightInput lp_w;
  std::string lp_out = ".";
  add_weight_options(lp, lp_w);
  lp->add_option("--out", lp_out, "output directory");

  // transform
  auto* tr = app.add_subcommand("transform",
                                "log-ratio transforms (clrw, gilr1, gilr2, "
                                "fourier)");
  TransformArgs ta;
  tr->add_option("--data", ta.data_path, "data CSV (header required)")
      ->required();
  add_weight_options(tr, ta.win);
  tr->add_option("--kind", ta.kind, "clrw | gilr1 | gilr2 | fourier");
  tr->add_option("--alpha", ta.alpha, "absolute-information weight");
  tr->add_option("--kappa", ta.kappa, "closure constant per component");
  tr->add_option("--zero-replace", ta.zero_value,
                 "replacement for exact zeros (0 disables)");
  tr->add_option("--pivots", ta.pivots,
                 "comma-separated pivot variable names (gilr1)");
  tr->add_flag("--invert", ta.invert, "map coordinates back to compositions");
  tr->add_option("--coords", ta.coords_path, "coordinate CSV for --invert");
  tr->add_option("--out", ta.outdir, "output directory");

  // learn
  auto* ln = app.add_subcommand("learn", "data-driven weight matrices");
  LearnArgs la;
  ln->add_option("--data", la.data_path, "data CSV (header required)")
      ->required();
  ln->add_option("--config", la.config_path, "JSON config");
  ln->add_option("--method", la.method, "stepwise | mb | smooth");
  ln->add_option("--max-edges", la.max_edges, "stepwise edge budget");
  ln->add_option("--stop-r2", la.stop_r2, "stepwise stopping R-squared");
  ln->add_option("--lambda", la.lambda, "mb sparsity parameter");
  ln->add_option("--alpha", la.alpha, "smooth-learning log-barrier weight");
  ln->add_option("--beta", la.beta, "smooth-learning quadratic weight");
  ln->add_option("--zero-replace", la.zero_value,
                 "replacement for exact zeros (0 disables)");
  ln->add_flag("--pca", la.pca, "add the PCA cumulative-variance column");
  ln->add_option("--out", la.outdir, "output directory");

  // regress
  auto* rg = app.add_subcommand("regress",
                                "zero-sum regression projected onto a "
                                "learned graph");
  RegressArgs ra;
  rg->add_option("--data", ra.data_path, "data CSV (header required)")
      ->required();
  rg->add_option("--response", ra.response_path, "response CSV (one column)")
      ->required();
  rg->add_option("--graph", ra.graph_path, "learned graph CSV")->required();
  rg->add_option("--ks", ra.ks, "comma-separated k values (default: all)");
  rg->add_option("--reps", ra.reps, "number of random splits");
  rg->add_option("--train-fraction", ra.train_fraction, "training fraction");
  rg->add_option("--lambda", ra.lambda, "zero-sum lasso penalty");
  rg->add_option("--seed", ra.seed, "PRNG seed (GCODA_SEED overrides)");
  rg->add_option("--model-k", ra.model_k, "edge count of the displayed model");
  rg->add_flag("!--no-standardize-y", ra.standardize_y,
               "fit the raw response");
  rg->add_option("--zero-replace", ra.zero_value,
                 "replacement for exact zeros (0 disables)");
  rg->add_option("--out", ra.outdir, "output directory");

  CLI11_PARSE(app, argc, argv);

  if (threads > 0) omp_set_num_threads(threads);
  if (const char* env_seed = std::getenv("GCODA_SEED")) {
    ra.seed = std::strtoull(env_seed, nullptr, 10);
  }

  try {
    if (lp->parsed()) {
      if (!lp_w.given()) {
        throw ValidationError("laplacian: --weights or --edges is required");
      }
      return cmd_laplacian(lp_w, lp_out);
    }
    if (tr->parsed()) {
      if (!ta.win.given()) {
        throw ValidationError("transform: --weights or --edges is required");
      }
      return cmd_transform(ta);
    }
    if (ln->parsed()) return cmd_learn(la);
    if (rg->parsed()) return cmd_regress(ra);
  } catch (const ValidationError& e) {
    nlohmann::json err{{"error", {{"type", "validation"},
                                  {"message", e.what()}}}};
    std::cerr << err.dump() << std::endl;
    return 2;
  } catch (const NumericError& e) {
    nlohmann::json err{{"error", {{"type", "numerical"},
                                  {"message", e.what()}}}};
    std::cerr << err.dump() << std::endl;
    return 3;
  } catch (const std::exception& e) {
    nlohmann::json err{{"error", {{"type", "internal"},
                                  {"message", e.what()}}}};
    std::cerr << err.dump() << std::endl;
    return 1;
  }
  return 0;
}
