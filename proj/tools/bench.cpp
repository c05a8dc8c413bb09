// Benchmark of the OpenMP kernels against their serial counterparts:
// stepwise selection (incremental parallel vs from-scratch reference),
// row-wise transforms, neighborhood selection and split evaluation.

#include <omp.h>

#include <cstdio>
#include <string>

#include "gcoda/reference.hpp"
#include "gcoda/regression.hpp"
#include "gcoda/transforms.hpp"

using namespace gcoda;

namespace {

Matrix synthetic_data(int n, int d, std::uint64_t seed) {
  Rng rng(seed);
  Matrix x(n, d);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < d; ++c) x(r, c) = std::exp(rng.normal());
  }
  return x;
}

double now() { return omp_get_wtime(); }

void report(const std::string& name, double serial, double parallel,
            double diff) {
  std::printf("%-34s %9.3fs %9.3fs %7.2fx   max|diff| %.2e\n", name.c_str(),
              serial, parallel, serial / parallel, diff);
}

}  // namespace

int main(int argc, char** argv) {
  int threads = omp_get_max_threads();
  if (argc > 1) {
    threads = std::stoi(argv[1]);
    omp_set_num_threads(threads);
  }
  std::printf("threads: %d\n\n", threads);
  std::printf("%-34s %10s %10s %9s\n", "kernel", "serial", "parallel",
              "speedup");

  {  // stepwise selection: from-scratch reference vs incremental parallel
    const auto data = double_center(synthetic_data(240, 24, 1));
    double t0 = now();
    const auto slow = reference::stepwise_select_reference(data);
    double t1 = now();
    const auto fast = stepwise_select(data);
    double t2 = now();
    double diff = 0.0;
    for (std::size_t t = 0; t < fast.trace.size(); ++t) {
      diff = std::max(diff, std::abs(fast.trace[t] - slow.trace[t]));
    }
    report("stepwise (vs from-scratch ref)", t1 - t0, t2 - t1, diff);
  }

  {  // stepwise selection: one thread vs all threads, same kernel
    const auto data = double_center(synthetic_data(400, 40, 2));
    omp_set_num_threads(1);
    double t0 = now();
    const auto one = stepwise_select(data);
    double t1 = now();
    omp_set_num_threads(threads);
    const auto many = stepwise_select(data);
    double t2 = now();
    double diff = 0.0;
    for (std::size_t t = 0; t < one.trace.size(); ++t) {
      diff = std::max(diff, std::abs(one.trace[t] - many.trace[t]));
    }
    report("stepwise (1 thread vs N)", t1 - t0, t2 - t1, diff);
  }

  {  // row-wise transform application
    const Matrix x = synthetic_data(20000, 60, 3);
    const Laplacian lap(WeightMatrix::aitchison(60));
    const GilrBasis basis = make_gilr2(lap, 0.5);
    double t0 = now();
    const Matrix ser = reference::apply_rows_serial(basis.forward, x);
    double t1 = now();
    const Matrix par = apply_rows(basis, x);
    double t2 = now();
    report("transform rows", t1 - t0, t2 - t1,
           (ser - par).cwiseAbs().maxCoeff());
  }

  {  // neighborhood selection across columns
    const auto data = double_center(synthetic_data(200, 40, 4));
    omp_set_num_threads(1);
    double t0 = now();
    const WeightMatrix one = mb_select(data, 0.05);
    double t1 = now();
    omp_set_num_threads(threads);
    const WeightMatrix many = mb_select(data, 0.05);
    double t2 = now();
    report("mb columns (1 thread vs N)", t1 - t0, t2 - t1,
           (one.matrix() - many.matrix()).cwiseAbs().maxCoeff());
  }

  {  // split evaluation across repetitions
    const Matrix x = synthetic_data(200, 20, 5);
    Rng rng(6);
    Vector beta(20);
    for (int i = 0; i < 20; ++i) beta[i] = rng.normal();
    beta.array() -= beta.mean();
    Vector y(200);
    for (int r = 0; r < 200; ++r) {
      y[r] = beta.dot(x.row(r).transpose().array().log().matrix()) +
             0.1 * rng.normal();
    }
    const auto learned = stepwise_select(double_center(x));
    std::vector<int> ks{1, 5, 10, 19};
    omp_set_num_threads(1);
    double t0 = now();
    const auto one = evaluate_splits(x, y, learned, ks, 60, 2.0 / 3.0, 0.0, 9);
    double t1 = now();
    omp_set_num_threads(threads);
    const auto many = evaluate_splits(x, y, learned, ks, 60, 2.0 / 3.0, 0.0, 9);
    double t2 = now();
    report("split evaluation (1 thread vs N)", t1 - t0, t2 - t1,
           (one.graph_mse - many.graph_mse).cwiseAbs().maxCoeff());
  }

  return 0;
}
