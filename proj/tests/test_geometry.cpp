#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "gcoda/geometry.hpp"
#include "gcoda/reference.hpp"
#include "test_util.hpp"

using namespace gcoda;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

GraphSimplexSpec spec_of(const WeightMatrix& w) {
  return GraphSimplexSpec::unit(connected_components(w));
}

Vector on_spec(const GraphSimplexSpec& spec, Rng& rng) {
  return spec.renormalize(testutil::random_composition(spec.dim(), rng));
}

}  // namespace

TEST_CASE("perturbation and powering on the graph simplex") {
  const WeightMatrix w = WeightMatrix::aitchison(2);
  const auto spec = spec_of(w);

  Vector x(2), y(2);
  x << 0.5, 0.5;
  y << 0.8, 0.2;
  const Vector p = perturb_w(x, y, spec);
  CHECK(p[0] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(0.2).epsilon(1e-12));

  CHECK((perturb_w(y, spec.neutral(), spec) - y).cwiseAbs().maxCoeff() <
        1e-12);

  const Vector inv = power_w(-1.0, y, spec);
  CHECK((perturb_w(y, inv, spec) - spec.neutral()).cwiseAbs().maxCoeff() <
        1e-12);

  CHECK((power_w(1.0, y, spec) - y).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((power_w(0.0, y, spec) - spec.neutral()).cwiseAbs().maxCoeff() <
        1e-15);
  const Vector sq = power_w(2.0, y, spec);
  CHECK(sq[0] == doctest::Approx(0.64 / 0.68).epsilon(1e-12));
  CHECK(sq[1] == doctest::Approx(0.04 / 0.68).epsilon(1e-12));

  Vector off(2);
  off << 0.4, 0.2;
  CHECK_THROWS_AS(perturb_w(off, y, spec), ValidationError);
}

TEST_CASE("inner product special values") {
  const WeightMatrix w2 = WeightMatrix::aitchison(2);
  const Laplacian lap2(w2);
  Vector x(2), y(2);
  x << std::exp(1.0), 1.0;
  y << std::exp(2.0), 1.0;
  CHECK(inner_product(x, y, lap2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(aitchison_inner(x, y) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(aitchison_inner(Vector::Ones(4), Vector::Ones(4)) == 0.0);

  // constant per component lies in the kernel
  Rng rng(3);
  const WeightMatrix wp = testutil::random_partitioned_weights(7, 2, rng);
  const Laplacian lapp(wp);
  Vector c = Vector::Ones(7);
  for (int v : lapp.partition().components[1]) c[v] = 3.5;
  for (int rep = 0; rep < 5; ++rep) {
    const Vector z = testutil::random_composition(7, rng);
    CHECK(std::abs(inner_product(c, z, lapp)) < 1e-10);
  }
}

TEST_CASE("laplacian power two matches the neighborhood product formula") {
  Rng rng(17);
  for (int rep = 0; rep < 15; ++rep) {
    const int d = 3 + rng.uniform_int(6);
    const WeightMatrix w = testutil::random_weights(d, 0.6, rng);
    const Laplacian lap(w);
    const Vector x = testutil::random_composition(d, rng);
    const Vector y = testutil::random_composition(d, rng);
    const Vector lx = x.array().log().matrix();
    const Vector ly = y.array().log().matrix();

    // entry i of L log x is log(x_i^{d(i)} / prod_{i~j} x_j^{w_ij})
    double oracle = 0.0;
    for (int i = 0; i < d; ++i) {
      double xi = lap.degrees()[i] * lx[i];
      double yi = lap.degrees()[i] * ly[i];
      for (int j = 0; j < d; ++j) {
        xi -= w(i, j) * lx[j];
        yi -= w(i, j) * ly[j];
      }
      oracle += xi * yi;
    }
    const double m2 = inner_product(x, y, lap, {0.0, 2});
    CHECK(std::abs(m2 - oracle) <= 1e-10 * (1.0 + std::abs(m2)));
  }
}

TEST_CASE("norm basics") {
  Rng rng(29);
  const WeightMatrix w = testutil::random_weights(6, 0.5, rng);
  const Laplacian lap(w);
  const auto spec = spec_of(w);

  // the squared norm sits at rounding level, so the norm at its sqrt
  CHECK(norm(spec.neutral(), lap) <= 1e-7);
  CHECK(norm(Vector::Ones(6), lap, {2.0, 1}) <= 1e-7);

  for (int rep = 0; rep < 10; ++rep) {
    const Vector x = testutil::random_composition(6, rng);
    const double n2 = norm(x, lap, {0.5, 1});
    CHECK(n2 * n2 ==
          doctest::Approx(inner_product(x, x, lap, {0.5, 1})).epsilon(1e-14));
  }
}

TEST_CASE("q-norm family") {
  // q = 2 reduces to the inner product norm
  Rng rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 2 + rng.uniform_int(7);
    const WeightMatrix w = testutil::random_weights(d, 0.6, rng);
    const Laplacian lap(w);
    const Vector x = testutil::random_composition(d, rng);
    for (const double alpha : {0.0, 0.7}) {
      const double qn = q_norm(x, w, 2.0, alpha);
      const double ip = inner_product(x, x, lap, {alpha, 1});
      CHECK(std::abs(qn * qn - ip) <= 1e-12 * (1.0 + std::abs(ip)));
    }
  }

  // single edge, q = infinity
  Matrix ws(2, 2);
  ws << 0, 1, 1, 0;
  const WeightMatrix w1(ws);
  Vector x1(2);
  x1 << std::exp(2.0), 1.0;
  CHECK(q_norm(x1, w1, kInf, 0.0) == doctest::Approx(1.0).epsilon(1e-12));

  // constant per component vanishes for every q
  const WeightMatrix wp = testutil::random_partitioned_weights(6, 2, rng);
  const Laplacian lapp(wp);
  Vector c = Vector::Ones(6);
  for (int v : lapp.partition().components[0]) c[v] = 0.2;
  for (const double q : {1.0, 2.0, 3.0, kInf}) {
    CHECK(q_norm(c, wp, q, 0.0) <= 1e-12);
  }

  CHECK_THROWS_AS(q_norm(x1, w1, 0.5, 0.0), ValidationError);

  // triangle inequality along the componentwise product
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 3 + rng.uniform_int(5);
    const WeightMatrix w = testutil::random_weights(d, 0.7, rng);
    const Vector a = testutil::random_composition(d, rng);
    const Vector b = testutil::random_composition(d, rng);
    for (const double q : {1.0, 2.0, 3.0, kInf}) {
      for (const double alpha : {0.0, 1.0}) {
        const double lhs = q_norm(a.cwiseProduct(b), w, q, alpha);
        const double rhs = q_norm(a, w, q, alpha) + q_norm(b, w, q, alpha);
        CHECK(lhs <= rhs + 1e-10 * (1.0 + rhs));
      }
    }
  }
}

TEST_CASE("aitchison consistency of the weighted geometry") {
  Rng rng(41);
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 2 + rng.uniform_int(8);
    const WeightMatrix wa = WeightMatrix::aitchison(d);
    const Laplacian lap(wa);
    const Vector x = testutil::random_composition(d, rng);
    const Vector y = testutil::random_composition(d, rng);
    const double direct = aitchison_inner(x, y);
    const double graph = inner_product(x, y, lap);
    CHECK(std::abs(direct - graph) <= 1e-12 * (1.0 + std::abs(direct)));
    CHECK(quadratic_form(lap, x.array().log().matrix(),
                         y.array().log().matrix()) ==
          doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("scale invariance and bilinearity at alpha = 0") {
  Rng rng(43);
  for (int rep = 0; rep < 15; ++rep) {
    const int d = 4 + rng.uniform_int(5);
    const int m = 1 + rng.uniform_int(2);
    const WeightMatrix w = testutil::random_partitioned_weights(d, m, rng);
    const Laplacian lap(w);
    const auto spec = spec_of(w);

    const Vector x = testutil::random_composition(d, rng);
    const Vector y = testutil::random_composition(d, rng);
    Vector scaled = x;
    for (int c = 0; c < lap.components(); ++c) {
      const double factor = 0.5 + 2.0 * rng.uniform();
      for (int v : lap.partition().components[static_cast<std::size_t>(c)]) {
        scaled[v] *= factor;
      }
    }
    const double base = inner_product(x, y, lap);
    CHECK(std::abs(inner_product(scaled, y, lap) - base) <=
          1e-10 * (1.0 + std::abs(base)));

    const Vector xs = on_spec(spec, rng);
    const Vector zs = on_spec(spec, rng);
    const Vector ys = on_spec(spec, rng);
    const double lhs = inner_product(perturb_w(xs, zs, spec), ys, lap);
    const double rhs =
        inner_product(xs, ys, lap) + inner_product(zs, ys, lap);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("inner product rejects bad input") {
  const WeightMatrix w = WeightMatrix::aitchison(3);
  const Laplacian lap(w);
  Vector bad(3);
  bad << 1.0, -2.0, 1.0;
  CHECK_THROWS_AS(inner_product(bad, Vector::Ones(3), lap), ValidationError);
  CHECK_THROWS_AS(aitchison_inner(bad, Vector::Ones(3)), ValidationError);
  CHECK_THROWS_AS(inner_product(Vector::Ones(2), Vector::Ones(3), lap),
                  ValidationError);
}
