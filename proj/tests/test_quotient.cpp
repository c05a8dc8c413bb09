#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gcoda/geometry.hpp"
#include "gcoda/quotient.hpp"
#include "test_util.hpp"

using namespace gcoda;

namespace {

Vector kernel_shifted(const Vector& x, const QuotientSpace& s, Rng& rng) {
  Vector coef = testutil::random_vector(s.kernel_dim(), rng);
  const Vector shift = s.kernel_basis() * coef;
  return (x.array().log() + shift.array()).exp().matrix();
}

ContrastMatrix random_contrast(int d, Rng& rng) {
  if (rng.uniform() < 0.5) {
    std::vector<AnchorCombination> rows;
    const int k = 1 + rng.uniform_int(d - 1);
    for (int r = 0; r < k; ++r) {
      AnchorCombination comb;
      comb.anchor = rng.uniform_int(d);
      for (int j = 0; j < d; ++j) {
        if (j != comb.anchor && rng.uniform() < 0.6) {
          comb.weights.emplace_back(j, rng.normal());
        }
      }
      if (comb.weights.empty()) comb.weights.emplace_back((comb.anchor + 1) % d, 1.0);
      rows.push_back(comb);
    }
    return contrast_from_weighted_combinations(d, rows);
  }
  std::vector<std::vector<RatioTerm>> subsets;
  const int k = 1 + rng.uniform_int(d - 1);
  for (int r = 0; r < k; ++r) {
    std::vector<RatioTerm> terms;
    const int t = 1 + rng.uniform_int(4);
    for (int q = 0; q < t; ++q) {
      int i = rng.uniform_int(d);
      int j = rng.uniform_int(d);
      if (i == j) j = (j + 1) % d;
      terms.push_back({i, j, rng.normal()});
    }
    subsets.push_back(terms);
  }
  return contrast_from_ratio_subsets(d, subsets);
}

}  // namespace

TEST_CASE("weighted combination rows") {
  const auto c = contrast_from_weighted_combinations(
      3, {AnchorCombination{0, {{1, 1.0}}}});
  Vector expect(3);
  expect << 1, -1, 0;
  CHECK((c.rows().row(0).transpose() - expect).cwiseAbs().maxCoeff() == 0.0);

  Rng rng(3);
  Vector x = testutil::random_composition(3, rng);
  CHECK(c.apply(x)[0] ==
        doctest::Approx(std::log(x[0] / x[1])).epsilon(1e-12));

  const auto c2 = contrast_from_weighted_combinations(
      3, {AnchorCombination{0, {{1, 2.0}, {2, -1.0}}}});
  Vector expect2(3);
  expect2 << 1, -2, 1;
  CHECK((c2.rows().row(0).transpose() - expect2).cwiseAbs().maxCoeff() == 0.0);

  for (int rep = 0; rep < 10; ++rep) {
    const auto cr = random_contrast(5, rng);
    CHECK((cr.rows() * Vector::Ones(5)).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("ratio subset rows") {
  const auto c = contrast_from_ratio_subsets(4, {{RatioTerm{0, 1, 1.0}}});
  Vector expect(4);
  expect << 1, -1, 0, 0;
  CHECK((c.rows().row(0).transpose() - expect).cwiseAbs().maxCoeff() == 0.0);

  // a symmetric tensor antisymmetrizes to the zero row
  const auto zero = contrast_from_ratio_subsets(
      3, {{RatioTerm{0, 1, 2.0}, RatioTerm{1, 0, 2.0}}});
  CHECK(zero.rows().cwiseAbs().maxCoeff() == 0.0);

  Rng rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<RatioTerm> terms;
    for (int q = 0; q < 6; ++q) {
      int i = rng.uniform_int(4);
      int j = rng.uniform_int(4);
      if (i == j) j = (j + 1) % 4;
      terms.push_back({i, j, rng.normal()});
    }
    const auto cr = contrast_from_ratio_subsets(4, {terms});
    const Vector x = testutil::random_composition(4, rng);
    double direct = 0.0;
    for (const auto& t : terms) {
      direct += std::log(x[t.i] / x[t.j]) * t.w;
    }
    CHECK(std::abs(cr.apply(x)[0] - direct) <=
          1e-12 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("quotient space construction") {
  Matrix single(1, 3);
  single << 1, -1, 0;
  const auto space =
      QuotientSpace::from_contrast(ContrastMatrix::from_rows(single));
  CHECK(space.kernel_dim() == 2);
  CHECK((space.matrix() * Vector::Ones(3)).cwiseAbs().maxCoeff() <= 1e-12);

  Rng rng(7);
  const Vector x = testutil::random_composition(3, rng);
  const Vector y = testutil::random_composition(3, rng);
  CHECK(quotient_inner_product(x, y, space) ==
        doctest::Approx(std::log(x[0] / x[1]) * std::log(y[0] / y[1]))
            .epsilon(1e-12));

  // an orthonormal zero-sum basis turned into contrast rows recovers the
  // aitchison geometry
  const int d = 5;
  const Laplacian la(WeightMatrix::aitchison(d));
  const Matrix v = la.eigenvectors().rightCols(d - 1);  // eigenvalue-1 block
  const auto aitch =
      QuotientSpace::from_contrast(ContrastMatrix::from_rows(v.transpose()));
  for (int rep = 0; rep < 10; ++rep) {
    const Vector a = testutil::random_composition(d, rng);
    const Vector b = testutil::random_composition(d, rng);
    const double got = quotient_inner_product(a, b, aitch);
    const double expect = aitchison_inner(a, b);
    CHECK(std::abs(got - expect) <= 1e-10 * (1.0 + std::abs(expect)));
  }
}

TEST_CASE("kernel invariance of the quotient operations") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 3 + rng.uniform_int(5);
    const auto space = QuotientSpace::from_contrast(random_contrast(d, rng));
    const Vector x = testutil::random_composition(d, rng);
    const Vector y = testutil::random_composition(d, rng);
    const Vector xs = kernel_shifted(x, space, rng);
    const Vector ys = kernel_shifted(y, space, rng);

    const double base = quotient_inner_product(x, y, space);
    CHECK(std::abs(quotient_inner_product(xs, ys, space) - base) <=
          1e-9 * (1.0 + std::abs(base)));

    CHECK((class_representative(xs, space) - class_representative(x, space))
              .cwiseAbs().maxCoeff() <= 1e-9);

    CHECK((quotient_perturb(xs, ys, space) - quotient_perturb(x, y, space))
              .cwiseAbs().maxCoeff() <= 1e-9);

    CHECK((quotient_gilr(xs, space) - quotient_gilr(x, space))
              .cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("representative is idempotent and classical at aitchison") {
  Rng rng(13);
  const int d = 4;
  for (int rep = 0; rep < 10; ++rep) {
    const auto space = QuotientSpace::from_contrast(random_contrast(d, rng));
    const Vector x = testutil::random_composition(d, rng);
    const Vector r1 = class_representative(x, space);
    const Vector r2 = class_representative(r1, space);
    CHECK((r1 - r2).cwiseAbs().maxCoeff() <= 1e-12);
  }

  const auto aitch = QuotientSpace::from_psd(
      Laplacian(WeightMatrix::aitchison(d)).matrix());
  for (int rep = 0; rep < 10; ++rep) {
    const Vector x = testutil::random_composition(d, rng);
    const Vector lx = x.array().log().matrix();
    const Vector clr = (lx.array() - lx.mean()).exp().matrix();
    CHECK((class_representative(x, aitch) - clr).cwiseAbs().maxCoeff() <=
          1e-12);
  }
}

TEST_CASE("class-level vector space axioms") {
  Rng rng(17);
  for (int rep = 0; rep < 15; ++rep) {
    const int d = 3 + rng.uniform_int(5);
    const auto space = QuotientSpace::from_contrast(random_contrast(d, rng));
    const Vector x = testutil::random_composition(d, rng);
    const Vector y = testutil::random_composition(d, rng);
    const Vector z = testutil::random_composition(d, rng);

    // neutral and inverse
    CHECK((quotient_perturb(x, Vector::Ones(d), space) -
           class_representative(x, space)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((quotient_perturb(x, quotient_power(-1.0, x, space), space) -
           Vector::Ones(d)).cwiseAbs().maxCoeff() <= 1e-10);

    // associativity at the class level
    const Vector ab_c =
        quotient_perturb(quotient_perturb(x, y, space), z, space);
    const Vector a_bc =
        quotient_perturb(x, quotient_perturb(y, z, space), space);
    CHECK((ab_c - a_bc).cwiseAbs().maxCoeff() <=
          1e-9 * (1.0 + ab_c.cwiseAbs().maxCoeff()));

    // distributivity of powering over perturbation
    const double a = rng.normal();
    const Vector lhs = quotient_power(a, quotient_perturb(x, y, space), space);
    const Vector rhs = quotient_perturb(quotient_power(a, x, space),
                                        quotient_power(a, y, space), space);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <=
          1e-9 * (1.0 + lhs.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("quotient gilr isometry and round trip") {
  Rng rng(19);
  for (int rep = 0; rep < 15; ++rep) {
    const int d = 3 + rng.uniform_int(5);
    const auto space = QuotientSpace::from_contrast(random_contrast(d, rng));
    const Vector x = testutil::random_composition(d, rng);
    const Vector zc = quotient_gilr(x, space);
    const double self = quotient_inner_product(x, x, space);
    CHECK(std::abs(zc.squaredNorm() - self) <= 1e-10 * (1.0 + self));

    const Vector back = quotient_gilr_inverse(zc, space);
    CHECK((back - class_representative(x, space)).cwiseAbs().maxCoeff() <=
          1e-9 * (1.0 + back.cwiseAbs().maxCoeff()));

    // kernel-only composition maps to the zero vector
    if (space.kernel_dim() > 0) {
      const Vector q = space.kernel_basis().col(0);
      const Vector xk = q.array().exp().matrix();
      CHECK(quotient_gilr(xk, space).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK(quotient_inner_product(xk, xk, space) <= 1e-10);
      // definiteness: zero self product means kernel membership
      CHECK(space.project_log(q).cwiseAbs().maxCoeff() <= 1e-8);
    }
  }
}

TEST_CASE("signed decomposition") {
  const int d = 4;
  const Matrix la = Laplacian(WeightMatrix::aitchison(d)).matrix();
  const Matrix w = signed_decomposition(la);
  CHECK((w - Matrix::Constant(d, d, 1.0 / d) +
         Matrix::Identity(d, d) / d).cwiseAbs().maxCoeff() <= 1e-14);

  Rng rng(23);
  for (int rep = 0; rep < 15; ++rep) {
    const auto c = random_contrast(d, rng);
    const Matrix l = c.rows().transpose() * c.rows();
    const Matrix ws = signed_decomposition(l);
    CHECK(ws.diagonal().cwiseAbs().maxCoeff() == 0.0);
    const Matrix rebuilt =
        Matrix(ws.rowwise().sum().asDiagonal()) - ws;
    CHECK((rebuilt - l).cwiseAbs().maxCoeff() <=
          1e-12 * std::max(1.0, l.cwiseAbs().maxCoeff()));

    // the signed double sum evaluates the quadratic form
    const Vector x = testutil::random_composition(d, rng);
    const Vector lx = x.array().log().matrix();
    double acc = 0.0;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        const double r = lx[i] - lx[j];
        acc += r * r * ws(i, j);
      }
    }
    acc *= 0.5;
    const double direct = lx.dot(l * lx);
    CHECK(std::abs(acc - direct) <= 1e-10 * (1.0 + std::abs(direct)));
  }

  Matrix bad(2, 2);
  bad << 1, 0, 0, 1;
  CHECK_THROWS_AS(signed_decomposition(bad), ValidationError);
}

TEST_CASE("degenerate gaussian covariance") {
  Rng rng(29);
  const int d = 5;
  const Laplacian la(WeightMatrix::aitchison(d));
  const Matrix v = la.eigenvectors().rightCols(d - 1);

  // Sigma = I collapses to the centering matrix
  const auto identity_space =
      degenerate_gaussian_covariance(v, Matrix::Identity(d - 1, d - 1));
  CHECK((identity_space.matrix() - la.matrix()).cwiseAbs().maxCoeff() <=
        1e-12);

  for (int rep = 0; rep < 10; ++rep) {
    Matrix a(d - 1, d - 1);
    for (int r = 0; r < d - 1; ++r) {
      for (int c = 0; c < d - 1; ++c) a(r, c) = rng.normal();
    }
    const Matrix sigma =
        a * a.transpose() + Matrix::Identity(d - 1, d - 1) * 0.5;
    const auto space = degenerate_gaussian_covariance(v, sigma);
    CHECK((space.matrix() * Vector::Ones(d)).cwiseAbs().maxCoeff() <= 1e-10);

    const Matrix pinv = space.pseudo_inverse();
    const Matrix lpl = space.matrix() * pinv * space.matrix();
    CHECK((lpl - space.matrix()).cwiseAbs().maxCoeff() <=
          1e-10 * std::max(1.0, space.matrix().cwiseAbs().maxCoeff()));
  }

  CHECK_THROWS_AS(
      degenerate_gaussian_covariance(v, -Matrix::Identity(d - 1, d - 1)),
      ValidationError);
}
