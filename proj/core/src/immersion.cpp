#include "deltaideal/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "deltaideal/parallel.hpp"

namespace deltaideal {

namespace {

constexpr double kRankGramTol = 1e-10;

/// Adjusts h so that u + h is exactly representable; keeps difference
/// quotients consistent with the arguments actually evaluated.
double representable_step(double u, double h) {
  const double t = u + h;
  return t - u;
}

Eigen::VectorXd axis_step(const Eigen::VectorXd& u, int axis, double h) {
  Eigen::VectorXd v = u;
  v[axis] += h;
  return v;
}

}  // namespace

ParametricImmersion::ParametricImmersion(int intrinsic_dim, int ambient_dim,
                                         std::vector<ChartAxis> domain,
                                         PositionFn position,
                                         NumericDerivativeOptions numeric)
    : n_(intrinsic_dim),
      m_(ambient_dim),
      domain_(std::move(domain)),
      position_(std::move(position)),
      numeric_(numeric) {
  if (n_ < 1 || m_ < n_) throw DimensionError("immersion needs 1 <= n <= m");
  if (static_cast<int>(domain_.size()) != n_) {
    throw DimensionError("chart domain must describe every coordinate");
  }
}

ParametricImmersion::ParametricImmersion(int intrinsic_dim, int ambient_dim,
                                         std::vector<ChartAxis> domain,
                                         PositionFn position, JetFn jet)
    : ParametricImmersion(intrinsic_dim, ambient_dim, std::move(domain),
                          std::move(position)) {
  jet_ = std::move(jet);
}

void ParametricImmersion::require_in_domain(const Eigen::VectorXd& u) const {
  if (u.size() != n_) throw DimensionMismatch("chart point has wrong dimension");
  for (int i = 0; i < n_; ++i) {
    if (u[i] < domain_[i].lo || u[i] > domain_[i].hi) {
      throw DomainError("coordinate " + std::to_string(i) + " = " +
                        std::to_string(u[i]) + " outside chart range");
    }
  }
}

Eigen::VectorXd ParametricImmersion::position(const Eigen::VectorXd& u) const {
  Eigen::VectorXd x = position_(u);
  if (x.size() != m_) throw DimensionMismatch("position map returned wrong dimension");
  return x;
}

ImmersionJet ParametricImmersion::jet(const Eigen::VectorXd& u) const {
  if (jet_) {
    ImmersionJet j = jet_(u);
    if (j.position.size() != m_ || j.first.rows() != m_ || j.first.cols() != n_ ||
        j.second.size() != static_cast<std::size_t>(n_) * n_) {
      throw DimensionMismatch("analytic jet has inconsistent shapes");
    }
    return j;
  }

  // Central differences with one Richardson step: (4 D(h) - D(2h)) / 3.
  ImmersionJet j;
  j.position = position(u);
  j.first.resize(m_, n_);
  j.second.assign(static_cast<std::size_t>(n_) * n_, Eigen::VectorXd::Zero(m_));

  auto first_at = [&](int i, double h) {
    return ((position(axis_step(u, i, h)) - position(axis_step(u, i, -h))) / (2.0 * h)).eval();
  };
  auto second_diag_at = [&](int i, double h) {
    return ((position(axis_step(u, i, h)) - 2.0 * j.position + position(axis_step(u, i, -h))) /
            (h * h)).eval();
  };
  auto second_mixed_at = [&](int i, int k, double h) {
    const Eigen::VectorXd pp = position(axis_step(axis_step(u, i, h), k, h));
    const Eigen::VectorXd pm = position(axis_step(axis_step(u, i, h), k, -h));
    const Eigen::VectorXd mp = position(axis_step(axis_step(u, i, -h), k, h));
    const Eigen::VectorXd mm = position(axis_step(axis_step(u, i, -h), k, -h));
    return ((pp - pm - mp + mm) / (4.0 * h * h)).eval();
  };

  for (int i = 0; i < n_; ++i) {
    const double scale = std::max(1.0, std::abs(u[i]));
    const double h1 = representable_step(u[i], numeric_.first_step * scale);
    j.first.col(i) = (4.0 * first_at(i, h1) - first_at(i, 2.0 * h1)) / 3.0;

    const double h2 = representable_step(u[i], numeric_.second_step * scale);
    j.second[static_cast<std::size_t>(i) * n_ + i] =
        (4.0 * second_diag_at(i, h2) - second_diag_at(i, 2.0 * h2)) / 3.0;
    for (int k = i + 1; k < n_; ++k) {
      const double hk = representable_step(
          u[k], numeric_.second_step * std::max(1.0, std::abs(u[k])));
      const double h = std::min(h2, hk);
      const Eigen::VectorXd mixed =
          (4.0 * second_mixed_at(i, k, h) - second_mixed_at(i, k, 2.0 * h)) / 3.0;
      j.second[static_cast<std::size_t>(i) * n_ + k] = mixed;
      j.second[static_cast<std::size_t>(k) * n_ + i] = mixed;
    }
  }
  return j;
}

ParametricImmersion ParametricImmersion::with_numeric_derivatives(
    NumericDerivativeOptions numeric) const {
  return ParametricImmersion(n_, m_, domain_, position_, numeric);
}

ImmersionSample fundamental_forms(const ParametricImmersion& im, const Eigen::VectorXd& u) {
  im.require_in_domain(u);
  const int n = im.intrinsic_dimension();
  const ImmersionJet j = im.jet(u);
  const Eigen::MatrixXd& J = j.first;

  ImmersionSample s;
  s.point = u;
  s.first_form = J.transpose() * J;
  if (s.first_form.determinant() <= kRankGramTol) {
    throw RankDeficiency("first-derivative Gram determinant " +
                         std::to_string(s.first_form.determinant()) +
                         " at or below cutoff");
  }

  Eigen::LLT<Eigen::MatrixXd> llt(s.first_form);
  if (llt.info() != Eigen::Success) {
    throw RankDeficiency("first fundamental form is not positive definite");
  }

  // Normal projection of the second partials: h_ij = x_ij - J g^{-1} J' x_ij.
  s.second_form.assign(static_cast<std::size_t>(n) * n, Eigen::VectorXd());
  for (int i = 0; i < n; ++i) {
    for (int k = i; k < n; ++k) {
      const Eigen::VectorXd& xik = j.second_partial(i, k);
      const Eigen::VectorXd tangential = J * llt.solve(J.transpose() * xik);
      const Eigen::VectorXd h = xik - tangential;
      s.second_form[static_cast<std::size_t>(i) * n + k] = h;
      s.second_form[static_cast<std::size_t>(k) * n + i] = h;
    }
  }

  // Mean curvature: the g-trace of h over n.
  const Eigen::MatrixXd ginv =
      llt.solve(Eigen::MatrixXd::Identity(n, n));
  Eigen::VectorXd H = Eigen::VectorXd::Zero(im.ambient_dimension());
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) H += ginv(i, k) * s.h(i, k);
  H /= static_cast<double>(n);
  s.mean_curvature = H;
  s.mean_curvature_sq = H.squaredNorm();
  return s;
}

CurvatureTensor induced_curvature(const ImmersionSample& sample) {
  const int n = static_cast<int>(sample.first_form.rows());

  // Re-express h in a g-orthonormal tangent frame via the Cholesky factor:
  // columns of L^{-T} give the change of basis.
  Eigen::LLT<Eigen::MatrixXd> llt(sample.first_form);
  if (llt.info() != Eigen::Success) {
    throw RankDeficiency("first fundamental form is not positive definite");
  }
  const Eigen::MatrixXd A = llt.matrixL()
                                .toDenseMatrix()
                                .transpose()
                                .triangularView<Eigen::Upper>()
                                .solve(Eigen::MatrixXd::Identity(n, n));

  const int m = static_cast<int>(sample.mean_curvature.size());
  const int pairs = n * (n + 1) / 2;
  auto pair_id = [n](int a, int b) {
    if (a > b) std::swap(a, b);
    return a * n - a * (a - 1) / 2 + (b - a);
  };
  Eigen::MatrixXd W(m, pairs);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      Eigen::VectorXd hab = Eigen::VectorXd::Zero(m);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) hab += A(i, a) * A(k, b) * sample.h(i, k);
      W.col(pair_id(a, b)) = hab;
    }
  }

  // All products of second-form vectors. Filling both halves from one dot
  // product makes the algebraic symmetries of the result exact, not just
  // approximate.
  Eigen::MatrixXd D(pairs, pairs);
  for (int p = 0; p < pairs; ++p) {
    for (int q = p; q < pairs; ++q) {
      const double dot = W.col(p).dot(W.col(q));
      D(p, q) = dot;
      D(q, p) = dot;
    }
  }

  std::vector<double> c(static_cast<std::size_t>(n) * n * n * n);
  std::size_t p = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc)
        for (int d = 0; d < n; ++d, ++p) {
          c[p] = D(pair_id(a, d), pair_id(b, cc)) - D(pair_id(a, cc), pair_id(b, d));
        }
  return validate_curvature_tensor(c, n);
}

InequalityReport verify_inequality(const ParametricImmersion& im,
                                   const std::vector<Eigen::VectorXd>& points,
                                   const OptimizerOptions& opts) {
  const int n = im.intrinsic_dimension();
  const std::vector<Partition> tuples = enumerate_tuples(n);
  const int npts = static_cast<int>(points.size());

  std::vector<std::vector<InequalityRecord>> per_point(npts);
  std::vector<char> converged(npts, 1);
  parallel_for(npts, [&](int idx) {
    const ImmersionSample s = fundamental_forms(im, points[idx]);
    const CurvatureTensor R = induced_curvature(s);
    auto& records = per_point[idx];
    records.reserve(tuples.size());
    for (const Partition& p : tuples) {
      const DeltaResult d = delta_invariant(R, p, opts);
      if (!d.converged) converged[idx] = 0;
      const double bound = c_coefficient(p) * s.mean_curvature_sq;
      records.push_back({idx, p, d.value, bound, bound - d.value});
    }
  });

  InequalityReport report;
  report.points = points;
  report.min_slack = std::numeric_limits<double>::infinity();
  for (int idx = 0; idx < npts; ++idx) {
    if (!converged[idx]) report.all_converged = false;
    for (const auto& rec : per_point[idx]) {
      report.min_slack = std::min(report.min_slack, rec.slack);
      if (std::abs(rec.slack) < report.equality_tol) {
        report.max_abs_slack_at_equality =
            std::max(report.max_abs_slack_at_equality, std::abs(rec.slack));
      }
      if (rec.slack < -report.violation_tol) ++report.violations;
      report.records.push_back(rec);
    }
  }
  if (npts == 0) report.min_slack = 0.0;
  return report;
}

IdealityReport ideality_residual(const ParametricImmersion& im,
                                 const std::vector<Eigen::VectorXd>& points,
                                 const OptimizerOptions& opts) {
  const int npts = static_cast<int>(points.size());
  IdealityReport report;
  report.points = points;
  report.residuals.assign(npts, 0.0);
  std::vector<char> converged(npts, 1);

  parallel_for(npts, [&](int idx) {
    const ImmersionSample s = fundamental_forms(im, points[idx]);
    const CurvatureTensor R = induced_curvature(s);
    const MaxNormalizedDelta d0 = max_normalized_delta(R, opts);
    if (!d0.all_converged) converged[idx] = 0;
    report.residuals[idx] = s.mean_curvature_sq - d0.value;
  });

  report.max_abs_residual = 0.0;
  report.min_residual = npts ? std::numeric_limits<double>::infinity() : 0.0;
  for (int idx = 0; idx < npts; ++idx) {
    if (!converged[idx]) report.all_converged = false;
    const double r = report.residuals[idx];
    report.max_abs_residual = std::max(report.max_abs_residual, std::abs(r));
    report.min_residual = std::min(report.min_residual, r);
    if (r < -report.tolerance) ++report.violations;
  }
  report.ideal = npts > 0 && report.max_abs_residual < report.tolerance;
  return report;
}

std::vector<Eigen::VectorXd> sample_chart(const ParametricImmersion& im, int count,
                                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Eigen::VectorXd> points;
  points.reserve(count);
  const int n = im.intrinsic_dimension();
  for (int s = 0; s < count; ++s) {
    Eigen::VectorXd u(n);
    for (int i = 0; i < n; ++i) {
      const ChartAxis& ax = im.domain()[i];
      std::uniform_real_distribution<double> dist(ax.lo + ax.margin_lo,
                                                  ax.hi - ax.margin_hi);
      u[i] = dist(rng);
    }
    points.push_back(std::move(u));
  }
  return points;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

ParametricImmersion make_sphere(double radius) {
  if (radius <= 0) throw DomainError("sphere radius must be positive");
  auto pos = [radius](const Eigen::VectorXd& u) {
    const double th = u[0], ph = u[1];
    return Eigen::Vector3d(radius * std::sin(th) * std::cos(ph),
                           radius * std::sin(th) * std::sin(ph),
                           radius * std::cos(th)).eval();
  };
  auto jet = [radius, pos](const Eigen::VectorXd& u) {
    const double th = u[0], ph = u[1];
    const double st = std::sin(th), ct = std::cos(th);
    const double sp = std::sin(ph), cp = std::cos(ph);
    ImmersionJet j;
    j.position = pos(u);
    j.first.resize(3, 2);
    j.first.col(0) = radius * Eigen::Vector3d(ct * cp, ct * sp, -st);
    j.first.col(1) = radius * Eigen::Vector3d(-st * sp, st * cp, 0.0);
    j.second.resize(4);
    j.second[0] = -j.position;                                       // d2/dth2
    j.second[1] = radius * Eigen::Vector3d(-ct * sp, ct * cp, 0.0);  // mixed
    j.second[2] = j.second[1];
    j.second[3] = radius * Eigen::Vector3d(-st * cp, -st * sp, 0.0);
    return j;
  };
  std::vector<ChartAxis> dom = {{0.0, kPi, 1e-3, 1e-3}, {0.0, 2.0 * kPi, 0.0, 0.0}};
  return ParametricImmersion(2, 3, std::move(dom), pos, jet);
}

ParametricImmersion make_plane() {
  auto pos = [](const Eigen::VectorXd& u) {
    return Eigen::Vector3d(u[0], u[1], 0.0).eval();
  };
  auto jet = [pos](const Eigen::VectorXd& u) {
    ImmersionJet j;
    j.position = pos(u);
    j.first.resize(3, 2);
    j.first.col(0) = Eigen::Vector3d(1, 0, 0);
    j.first.col(1) = Eigen::Vector3d(0, 1, 0);
    j.second.assign(4, Eigen::Vector3d::Zero());
    return j;
  };
  std::vector<ChartAxis> dom = {{-1.0, 1.0, 0.0, 0.0}, {-1.0, 1.0, 0.0, 0.0}};
  return ParametricImmersion(2, 3, std::move(dom), pos, jet);
}

ParametricImmersion make_cylinder(double radius) {
  if (radius <= 0) throw DomainError("cylinder radius must be positive");
  auto pos = [radius](const Eigen::VectorXd& u) {
    return Eigen::Vector3d(radius * std::cos(u[0]), radius * std::sin(u[0]), u[1]).eval();
  };
  auto jet = [radius, pos](const Eigen::VectorXd& u) {
    const double cu = std::cos(u[0]), su = std::sin(u[0]);
    ImmersionJet j;
    j.position = pos(u);
    j.first.resize(3, 2);
    j.first.col(0) = radius * Eigen::Vector3d(-su, cu, 0.0);
    j.first.col(1) = Eigen::Vector3d(0, 0, 1);
    j.second.resize(4);
    j.second[0] = radius * Eigen::Vector3d(-cu, -su, 0.0);
    j.second[1] = Eigen::Vector3d::Zero();
    j.second[2] = Eigen::Vector3d::Zero();
    j.second[3] = Eigen::Vector3d::Zero();
    return j;
  };
  std::vector<ChartAxis> dom = {{0.0, 2.0 * kPi, 0.0, 0.0}, {-1.0, 1.0, 0.0, 0.0}};
  return ParametricImmersion(2, 3, std::move(dom), pos, jet);
}

ParametricImmersion make_torus(double R, double r) {
  if (r <= 0 || R <= r) throw DomainError("torus needs R > r > 0");
  auto pos = [R, r](const Eigen::VectorXd& u) {
    const double th = u[0], ph = u[1];
    const double w = R + r * std::cos(th);
    return Eigen::Vector3d(w * std::cos(ph), w * std::sin(ph), r * std::sin(th)).eval();
  };
  auto jet = [R, r, pos](const Eigen::VectorXd& u) {
    const double th = u[0], ph = u[1];
    const double st = std::sin(th), ct = std::cos(th);
    const double sp = std::sin(ph), cp = std::cos(ph);
    const double w = R + r * ct;
    ImmersionJet j;
    j.position = pos(u);
    j.first.resize(3, 2);
    j.first.col(0) = Eigen::Vector3d(-r * st * cp, -r * st * sp, r * ct);
    j.first.col(1) = Eigen::Vector3d(-w * sp, w * cp, 0.0);
    j.second.resize(4);
    j.second[0] = Eigen::Vector3d(-r * ct * cp, -r * ct * sp, -r * st);
    j.second[1] = Eigen::Vector3d(r * st * sp, -r * st * cp, 0.0);
    j.second[2] = j.second[1];
    j.second[3] = Eigen::Vector3d(-w * cp, -w * sp, 0.0);
    return j;
  };
  std::vector<ChartAxis> dom = {{0.0, 2.0 * kPi, 0.0, 0.0}, {0.0, 2.0 * kPi, 0.0, 0.0}};
  return ParametricImmersion(2, 3, std::move(dom), pos, jet);
}

ParametricImmersion make_ellipsoid(double a, double b, double c) {
  if (a <= 0 || b <= 0 || c <= 0) throw DomainError("ellipsoid semi-axes must be positive");
  auto pos = [a, b, c](const Eigen::VectorXd& u) {
    const double th = u[0], ph = u[1];
    return Eigen::Vector3d(a * std::sin(th) * std::cos(ph),
                           b * std::sin(th) * std::sin(ph),
                           c * std::cos(th)).eval();
  };
  auto jet = [a, b, c, pos](const Eigen::VectorXd& u) {
    const double th = u[0], ph = u[1];
    const double st = std::sin(th), ct = std::cos(th);
    const double sp = std::sin(ph), cp = std::cos(ph);
    ImmersionJet j;
    j.position = pos(u);
    j.first.resize(3, 2);
    j.first.col(0) = Eigen::Vector3d(a * ct * cp, b * ct * sp, -c * st);
    j.first.col(1) = Eigen::Vector3d(-a * st * sp, b * st * cp, 0.0);
    j.second.resize(4);
    j.second[0] = Eigen::Vector3d(-a * st * cp, -b * st * sp, -c * ct);
    j.second[1] = Eigen::Vector3d(-a * ct * sp, b * ct * cp, 0.0);
    j.second[2] = j.second[1];
    j.second[3] = Eigen::Vector3d(-a * st * cp, -b * st * sp, 0.0);
    return j;
  };
  std::vector<ChartAxis> dom = {{0.0, kPi, 1e-3, 1e-3}, {0.0, 2.0 * kPi, 0.0, 0.0}};
  return ParametricImmersion(2, 3, std::move(dom), pos, jet);
}

ParametricImmersion make_clifford(double a, double b) {
  if (a <= 0 || b <= 0) throw DomainError("product-torus radii must be positive");
  auto pos = [a, b](const Eigen::VectorXd& u) {
    Eigen::VectorXd x(4);
    x << a * std::cos(u[0]), a * std::sin(u[0]), b * std::cos(u[1]), b * std::sin(u[1]);
    return x;
  };
  auto jet = [a, b, pos](const Eigen::VectorXd& u) {
    const double cu = std::cos(u[0]), su = std::sin(u[0]);
    const double cv = std::cos(u[1]), sv = std::sin(u[1]);
    ImmersionJet j;
    j.position = pos(u);
    j.first.resize(4, 2);
    j.first.col(0) << -a * su, a * cu, 0.0, 0.0;
    j.first.col(1) << 0.0, 0.0, -b * sv, b * cv;
    j.second.assign(4, Eigen::VectorXd::Zero(4));
    j.second[0] << -a * cu, -a * su, 0.0, 0.0;
    j.second[3] << 0.0, 0.0, -b * cv, -b * sv;
    return j;
  };
  std::vector<ChartAxis> dom = {{0.0, 2.0 * kPi, 0.0, 0.0}, {0.0, 2.0 * kPi, 0.0, 0.0}};
  return ParametricImmersion(2, 4, std::move(dom), pos, jet);
}

}  // namespace

ParametricImmersion builtin_immersion(const std::string& name,
                                      const std::vector<double>& params) {
  auto param = [&params](std::size_t i, double fallback) {
    return i < params.size() ? params[i] : fallback;
  };
  if (name == "sphere") return make_sphere(param(0, 1.0));
  if (name == "plane") return make_plane();
  if (name == "cylinder") return make_cylinder(param(0, 1.0));
  if (name == "torus") return make_torus(param(0, 2.0), param(1, 1.0));
  if (name == "ellipsoid") return make_ellipsoid(param(0, 1.0), param(1, 1.0), param(2, 1.0));
  if (name == "clifford") {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return make_clifford(param(0, inv_sqrt2), param(1, inv_sqrt2));
  }
  throw DomainError("unknown built-in immersion '" + name + "'");
}

std::vector<std::string> builtin_immersion_names() {
  return {"sphere", "plane", "cylinder", "torus", "ellipsoid", "clifford"};
}

}  // namespace deltaideal
