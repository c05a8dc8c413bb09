#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gcoda/graph.hpp"
#include "gcoda/reference.hpp"
#include "test_util.hpp"

using namespace gcoda;

TEST_CASE("laplacian of a single edge") {
  Matrix w(2, 2);
  w << 0, 1, 1, 0;
  const Laplacian lap((WeightMatrix(w)));
  Matrix expect(2, 2);
  expect << 1, -1, -1, 1;
  CHECK((lap.matrix() - expect).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("aitchison weights give the centering matrix") {
  const Laplacian lap(WeightMatrix::aitchison(3));
  const Matrix expect =
      Matrix::Identity(3, 3) - Matrix::Constant(3, 3, 1.0 / 3.0);
  CHECK((lap.matrix() - expect).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("star graph laplacian") {
  const Laplacian lap(WeightMatrix::star(3));
  Matrix expect(3, 3);
  expect << 2, -1, -1, -1, 1, 0, -1, 0, 1;
  CHECK((lap.matrix() - expect).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("weight matrix validation names the violated invariant") {
  Matrix asym(2, 2);
  asym << 0, 1, 2, 0;
  CHECK_THROWS_WITH_AS(WeightMatrix{asym}, doctest::Contains("symmetry"),
                       ValidationError);
  Matrix neg(2, 2);
  neg << 0, -1, -1, 0;
  CHECK_THROWS_WITH_AS(WeightMatrix{neg}, doctest::Contains("nonnegative"),
                       ValidationError);
  Matrix diag(2, 2);
  diag << 1, 0, 0, 1;
  CHECK_THROWS_WITH_AS(WeightMatrix{diag}, doctest::Contains("diagonal"),
                       ValidationError);
}

TEST_CASE("symmetrize averages and preserves the quadratic form") {
  Matrix u(2, 2);
  u << 0, 2, 0, 0;
  const WeightMatrix w = symmetrize(u);
  CHECK(w(0, 1) == 1.0);
  CHECK(w(1, 0) == 1.0);

  Matrix sym(3, 3);
  sym << 0, 1, 2, 1, 0, 3, 2, 3, 0;
  CHECK((symmetrize(sym).matrix() - sym).cwiseAbs().maxCoeff() == 0.0);

  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 2 + rng.uniform_int(6);
    Matrix asym = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        if (i != j) asym(i, j) = rng.uniform();
      }
    }
    const Vector f = testutil::random_vector(d, rng);
    const Vector g = testutil::random_vector(d, rng);
    double asym_sum = 0.0;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        asym_sum += (f[i] - f[j]) * (g[i] - g[j]) * asym(i, j);
      }
    }
    asym_sum *= 0.5;
    const double sym_sum =
        reference::quadratic_form_edge_sum(symmetrize(asym), f, g);
    CHECK(std::abs(asym_sum - sym_sum) <= 1e-12 * (1.0 + std::abs(sym_sum)));
  }
}

TEST_CASE("connected components") {
  CHECK(connected_components(WeightMatrix::aitchison(4)).count == 1);

  Matrix two = Matrix::Zero(4, 4);
  two(0, 1) = two(1, 0) = 1.0;
  two(2, 3) = two(3, 2) = 1.0;
  const auto part = connected_components(WeightMatrix(two));
  CHECK(part.count == 2);
  CHECK(part.components[0] == std::vector<int>{0, 1});
  CHECK(part.components[1] == std::vector<int>{2, 3});

  const auto singletons = connected_components(WeightMatrix::zero(5));
  CHECK(singletons.count == 5);
}

TEST_CASE("incidence rows and the directed gram identity") {
  Matrix w(2, 2);
  w << 0, 4, 4, 0;
  const IncidenceMatrix inc(WeightMatrix(w), 0.5);
  CHECK(inc.rows()(0, 0) == 2.0);
  CHECK(inc.rows()(0, 1) == -2.0);

  Rng rng(11);
  for (int rep = 0; rep < 25; ++rep) {
    const int d = 2 + rng.uniform_int(9);
    const WeightMatrix wm = testutil::random_weights(d, 0.5, rng);
    const Laplacian lap(wm);
    const IncidenceMatrix dw(wm, 0.5);
    const double scale = lap.matrix().cwiseAbs().maxCoeff();
    CHECK((dw.directed_gram() - 2.0 * lap.matrix()).cwiseAbs().maxCoeff() <=
          1e-12 * std::max(scale, 1.0));

    // (d f)_e = w_ij (f_i - f_j) row by row
    const IncidenceMatrix d1(wm, 1.0);
    const Vector f = testutil::random_vector(d, rng);
    const Vector df = d1.apply(f);
    for (int e = 0; e < d1.edge_count(); ++e) {
      const Edge& ed = d1.edges()[static_cast<std::size_t>(e)];
      CHECK(df[e] == doctest::Approx(ed.w * (f[ed.i] - f[ed.j])).epsilon(1e-12));
    }
  }
}

TEST_CASE("quadratic form matches the halved double sum") {
  const Laplacian ones(WeightMatrix::aitchison(5));
  CHECK(quadratic_form(ones, Vector::Ones(5), Vector::Ones(5)) ==
        doctest::Approx(0.0).epsilon(1e-14));

  Matrix w(2, 2);
  w << 0, 1, 1, 0;
  const Laplacian single((WeightMatrix(w)));
  Vector f(2), g(2);
  f << 1, 0;
  g << 2, 0;
  CHECK(quadratic_form(single, f, g) == doctest::Approx(2.0));

  Rng rng(23);
  for (int rep = 0; rep < 50; ++rep) {
    const int d = 2 + rng.uniform_int(11);
    const WeightMatrix wm = testutil::random_weights(d, 0.6, rng);
    const Laplacian lap(wm);
    const Vector f = testutil::random_vector(d, rng);
    const Vector g = testutil::random_vector(d, rng);
    const double lhs = quadratic_form(lap, f, g);
    const double rhs = reference::quadratic_form_edge_sum(wm, f, g);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs)));
  }
}

TEST_CASE("kernel structure follows the components") {
  Rng rng(37);
  for (int rep = 0; rep < 20; ++rep) {
    const int m = 1 + rng.uniform_int(3);
    const int d = std::max(2 * m, 3 + rng.uniform_int(8));
    const WeightMatrix wm = testutil::random_partitioned_weights(d, m, rng);
    const Laplacian lap(wm);
    CHECK(lap.components() == m);
    CHECK(lap.eigenvalues()[0] >= 0.0);

    // exactly m eigenvalues below tolerance
    const double scale = std::max(1.0, lap.eigenvalues()[d - 1]);
    int zeros = 0;
    Eigen::SelfAdjointEigenSolver<Matrix> raw(lap.matrix());
    for (int i = 0; i < d; ++i) {
      if (raw.eigenvalues()[i] <= 1e-9 * scale) ++zeros;
    }
    CHECK(zeros == m);

    // indicator vectors are exact kernel vectors
    const Matrix basis = lap.kernel_indicator_basis();
    CHECK((lap.matrix() * basis).cwiseAbs().maxCoeff() <= 1e-12 * scale);

    // permuted Laplacian is block diagonal with exact zeros off the blocks
    const Matrix p = lap.partition().permutation_matrix();
    const Matrix block = p * lap.matrix() * p.transpose();
    int offset = 0;
    for (const auto& comp : lap.partition().components) {
      const int k = static_cast<int>(comp.size());
      for (int r = offset; r < offset + k; ++r) {
        for (int c = 0; c < d; ++c) {
          if (c < offset || c >= offset + k) {
            CHECK(block(r, c) == 0.0);
          }
        }
      }
      offset += k;
    }
  }
}

TEST_CASE("star graph spectrum") {
  for (int d = 3; d <= 20; ++d) {
    const Laplacian lap(WeightMatrix::star(d));
    const Vector& ev = lap.eigenvalues();
    CHECK(std::abs(ev[0]) <= 1e-10);
    for (int i = 1; i < d - 1; ++i) {
      CHECK(std::abs(ev[i] - 1.0) <= 1e-10);
    }
    CHECK(std::abs(ev[d - 1] - d) <= 1e-10 * d);
  }
}

TEST_CASE("edge construction round trip") {
  Rng rng(5);
  const WeightMatrix wm = testutil::random_weights(8, 0.4, rng);
  const WeightMatrix back = WeightMatrix::from_edges(8, wm.edge_list());
  CHECK((back.matrix() - wm.matrix()).cwiseAbs().maxCoeff() == 0.0);
}
