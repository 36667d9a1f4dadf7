#include <doctest.h>

#include <random>

#include "deltaideal/curvature.hpp"
#include "deltaideal/delta.hpp"
#include "support/oracles.hpp"

using namespace deltaideal;

TEST_CASE("constant-curvature model components are accepted unchanged") {
  const CurvatureTensor R = constant_curvature_tensor(3, 1.0);
  const CurvatureTensor validated = validate_curvature_tensor(R.components(), 3);
  for (std::size_t i = 0; i < R.components().size(); ++i) {
    CHECK(validated.components()[i] == doctest::Approx(R.components()[i]).epsilon(1e-15));
  }
}

TEST_CASE("all-zero array is a valid flat tensor") {
  std::vector<double> zeros(4 * 4 * 4 * 4, 0.0);
  const CurvatureTensor R = validate_curvature_tensor(zeros, 4);
  CHECK(scalar_curvature(R) == 0.0);
}

TEST_CASE("perturbing one component breaks antisymmetry") {
  std::vector<double> c = constant_curvature_tensor(3, 1.0).components();
  c[((0 * 3 + 1) * 3 + 0) * 3 + 1] += 1e-3;
  CHECK_THROWS_AS(validate_curvature_tensor(c, 3, 1e-9), SymmetryViolation);
  try {
    validate_curvature_tensor(c, 3, 1e-9);
  } catch (const SymmetryViolation& e) {
    CHECK(e.family == "antisymmetry");
    CHECK(e.deviation == doctest::Approx(1e-3).epsilon(1e-6));
  }
}

TEST_CASE("dimension below 2 is rejected") {
  CHECK_THROWS_AS(constant_curvature_tensor(1, 1.0), DimensionError);
  CHECK_THROWS_AS(validate_curvature_tensor({0.0}, 1), DimensionError);
  CHECK_THROWS_AS(validate_curvature_tensor({0.0, 0.0}, 2), DimensionError);  // not n^4
}

TEST_CASE("sectional curvature of space forms") {
  SUBCASE("flat tensor gives zero") {
    const CurvatureTensor R = constant_curvature_tensor(2, 0.0);
    CHECK(sectional_curvature(R, Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)) == 0.0);
  }
  SUBCASE("every valid pair sees c0") {
    const CurvatureTensor R = constant_curvature_tensor(4, 1.0);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd x(4), y(4);
      for (int i = 0; i < 4; ++i) {
        x[i] = gauss(rng);
        y[i] = gauss(rng);
      }
      CHECK(sectional_curvature(R, x, y) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  SUBCASE("radius-2 sphere model has K = 1/4") {
    const CurvatureTensor R = constant_curvature_tensor(3, 0.25);
    // Model formula evaluated directly: R(e1,e2,e2,e1) = c0.
    CHECK(R(0, 1, 1, 0) == doctest::Approx(0.25));
    CHECK(sectional_curvature(R, Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0)) ==
          doctest::Approx(0.25).epsilon(1e-14));
  }
  SUBCASE("non-coordinate plane on the unit 4-sphere") {
    const CurvatureTensor R = constant_curvature_tensor(4, 1.0);
    Eigen::VectorXd x(4), y(4);
    x << 1, 1, 0, 0;
    y << 0, 0, 1, 0;
    CHECK(sectional_curvature(R, x, y) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("degenerate plane is rejected") {
    const CurvatureTensor R = constant_curvature_tensor(3, 1.0);
    Eigen::Vector3d x(1, 0, 0);
    CHECK_THROWS_AS(sectional_curvature(R, x, 2.0 * x), DegeneratePlane);
  }
}

TEST_CASE("sectional curvature is a function of the plane") {
  const CurvatureTensor R = oracles::random_tensor(4, 99);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd x(4), y(4);
  for (int i = 0; i < 4; ++i) {
    x[i] = gauss(rng);
    y[i] = gauss(rng);
  }
  const double k = sectional_curvature(R, x, y);
  CHECK(sectional_curvature(R, y, x) == doctest::Approx(k).epsilon(1e-12));
  // Invariance under invertible in-plane change of basis x -> a x + b y.
  CHECK(sectional_curvature(R, 0.7 * x + 1.3 * y, y) == doctest::Approx(k).epsilon(1e-10));
  CHECK(sectional_curvature(R, -2.0 * x, y + 0.25 * x) == doctest::Approx(k).epsilon(1e-10));
}

TEST_CASE("scalar curvature values") {
  CHECK(scalar_curvature(constant_curvature_tensor(4, 1.0)) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(scalar_curvature(constant_curvature_tensor(3, 1.0)) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(scalar_curvature(constant_curvature_tensor(5, 0.0)) == 0.0);
  SUBCASE("constant model scales exactly") {
    for (int n = 2; n <= 8; ++n) {
      const double c0 = 0.3;
      CHECK(scalar_curvature(constant_curvature_tensor(n, c0)) ==
            doctest::Approx(c0 * n * (n - 1) / 2.0).epsilon(1e-12));
    }
  }
  SUBCASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(scalar_curvature(constant_curvature_tensor(4, 1.0), Frame::identity(3)),
                    DimensionMismatch);
  }
}

TEST_CASE("scalar curvature is frame-independent") {
  const CurvatureTensor R = oracles::random_tensor(4, 123);
  const double tau = scalar_curvature(R);
  double lo = tau, hi = tau;
  for (int trial = 0; trial < 100; ++trial) {
    const Frame F(random_orthogonal(4, 1000 + trial));
    const double t = scalar_curvature(R, F);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  CHECK(hi - lo < 1e-8);
}

TEST_CASE("subspace scalar curvature") {
  const CurvatureTensor S4 = constant_curvature_tensor(4, 1.0);
  Eigen::MatrixXd basis2 = Eigen::MatrixXd::Zero(4, 2);
  basis2(0, 0) = 1;
  basis2(2, 1) = 1;
  CHECK(subspace_scalar_curvature(S4, Subspace(basis2)) == doctest::Approx(1.0).epsilon(1e-14));

  Eigen::MatrixXd basis3 = Eigen::MatrixXd::Zero(4, 3);
  basis3(0, 0) = basis3(1, 1) = basis3(3, 2) = 1;
  CHECK(subspace_scalar_curvature(S4, Subspace(basis3)) == doctest::Approx(3.0).epsilon(1e-14));

  const CurvatureTensor flat = constant_curvature_tensor(4, 0.0);
  CHECK(subspace_scalar_curvature(flat, Subspace(basis3)) == 0.0);

  SUBCASE("rank below 2 cannot even be constructed") {
    CHECK_THROWS_AS(Subspace(Eigen::MatrixXd::Identity(4, 1)), RankError);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(subspace_scalar_curvature(constant_curvature_tensor(3, 1.0), Subspace(basis2)),
                    DimensionMismatch);
  }
}

TEST_CASE("subspace scalar curvature ignores the basis choice") {
  const CurvatureTensor R = oracles::random_tensor(5, 7);
  const Eigen::MatrixXd Q = random_orthogonal(5, 77);
  const Eigen::MatrixXd basis = Q.leftCols(3);
  const double tau = subspace_scalar_curvature(R, Subspace(basis));
  double lo = tau, hi = tau;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::MatrixXd rot = random_orthogonal(3, 500 + trial);
    const double t = subspace_scalar_curvature(R, Subspace(basis * rot));
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  CHECK(hi - lo < 1e-8);
}

TEST_CASE("symmetrization projects onto exact curvature symmetries") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> raw(3 * 3 * 3 * 3);
  for (double& v : raw) v = uni(rng);
  const auto sym = symmetrize_components(raw, 3);
  const auto dev = symmetry_deviation(sym, 3);
  CHECK(dev.antisymmetry < 1e-13);
  CHECK(dev.pair < 1e-13);
  CHECK(dev.bianchi < 1e-13);
}

TEST_CASE("noise within tolerance is symmetrized away") {
  std::vector<double> c = constant_curvature_tensor(3, 1.0).components();
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> noise(-1.5e-10, 1.5e-10);
  for (double& v : c) v += noise(rng);
  const CurvatureTensor R = validate_curvature_tensor(c, 3, 1e-9);
  const auto dev = symmetry_deviation(R.components(), 3);
  CHECK(dev.antisymmetry < 1e-14);
  CHECK(dev.pair < 1e-14);
  CHECK(dev.bianchi < 1e-14);
}

TEST_CASE("frames and subspaces validate orthonormality") {
  CHECK_THROWS_AS(Frame(Eigen::MatrixXd::Constant(3, 3, 0.5)), RankError);
  Eigen::MatrixXd skewed(3, 2);
  skewed << 1, 1, 0, 1, 0, 0;
  CHECK_THROWS_AS(Subspace{skewed}, RankError);
}
