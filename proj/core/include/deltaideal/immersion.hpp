#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "deltaideal/curvature.hpp"
#include "deltaideal/delta.hpp"
#include "deltaideal/partitions.hpp"

namespace deltaideal {

/// One chart coordinate: range plus sampling margins. Margins keep samplers
/// away from coordinate singularities (e.g. sphere poles); they do not shrink
/// the domain itself.
struct ChartAxis {
  double lo = 0.0;
  double hi = 1.0;
  double margin_lo = 0.0;
  double margin_hi = 0.0;
};

/// Position and first/second partial derivatives of a chart map at a point.
struct ImmersionJet {
  Eigen::VectorXd position;  ///< m
  Eigen::MatrixXd first;     ///< m x n, column i = d x / d u_i
  /// Second partials, n*n entries row-major; entry (i,j) is an m-vector.
  std::vector<Eigen::VectorXd> second;

  const Eigen::VectorXd& second_partial(int i, int j) const {
    return second[static_cast<std::size_t>(i) * first.cols() + j];
  }
};

struct NumericDerivativeOptions {
  double first_step = 1e-5;
  /// Second derivatives need a larger step: the difference quotient divides
  /// round-off noise by step^2.
  double second_step = 1e-4;
};

/// A parametric immersion of an n-dimensional chart into Euclidean m-space.
/// Derivatives come either from supplied analytic jets or from central
/// differences with one step of Richardson extrapolation on the position map.
class ParametricImmersion {
 public:
  using PositionFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
  using JetFn = std::function<ImmersionJet(const Eigen::VectorXd&)>;

  /// Numeric-derivative immersion.
  ParametricImmersion(int intrinsic_dim, int ambient_dim, std::vector<ChartAxis> domain,
                      PositionFn position, NumericDerivativeOptions numeric = {});
  /// Analytic immersion.
  ParametricImmersion(int intrinsic_dim, int ambient_dim, std::vector<ChartAxis> domain,
                      PositionFn position, JetFn jet);

  int intrinsic_dimension() const { return n_; }
  int ambient_dimension() const { return m_; }
  const std::vector<ChartAxis>& domain() const { return domain_; }
  bool has_analytic_jet() const { return static_cast<bool>(jet_); }

  Eigen::VectorXd position(const Eigen::VectorXd& u) const;
  ImmersionJet jet(const Eigen::VectorXd& u) const;

  /// Same surface with derivatives forced through the finite-difference path.
  ParametricImmersion with_numeric_derivatives(NumericDerivativeOptions numeric = {}) const;

  /// Throws DomainError when u lies outside the chart box.
  void require_in_domain(const Eigen::VectorXd& u) const;

 private:
  int n_, m_;
  std::vector<ChartAxis> domain_;
  PositionFn position_;
  JetFn jet_;  // empty for the numeric path
  NumericDerivativeOptions numeric_;
};

/// Pointwise first/second fundamental forms and mean curvature data.
struct ImmersionSample {
  Eigen::VectorXd point;
  Eigen::MatrixXd first_form;  ///< g, n x n symmetric positive definite
  /// h(i,j): normal-valued second form, n*n entries row-major, symmetric.
  std::vector<Eigen::VectorXd> second_form;
  Eigen::VectorXd mean_curvature;  ///< m-vector, normal to the tangent space
  double mean_curvature_sq = 0.0;  ///< H^2

  const Eigen::VectorXd& h(int i, int j) const {
    return second_form[static_cast<std::size_t>(i) * first_form.cols() + j];
  }
};

/// g from first partials, h as the normal projection of second partials,
/// mean curvature as the metric trace of h over n. Throws RankDeficiency
/// when the first-derivative Gram determinant drops to 1e-10 or below.
ImmersionSample fundamental_forms(const ParametricImmersion& im, const Eigen::VectorXd& u);

/// Curvature tensor of the induced metric, computed in a g-orthonormal frame
/// from products of the second form (flat ambient space). Matches the sign
/// convention of constant_curvature_tensor: the unit sphere gives K = +1.
CurvatureTensor induced_curvature(const ImmersionSample& sample);

struct InequalityRecord {
  int point_index = 0;
  Partition partition;
  double delta = 0.0;
  double bound = 0.0;  ///< c * H^2
  double slack = 0.0;  ///< bound - delta
};

/// Pointwise check of delta <= c * H^2 over every admissible tuple.
struct InequalityReport {
  std::vector<Eigen::VectorXd> points;
  std::vector<InequalityRecord> records;
  double min_slack = 0.0;
  /// Largest |slack| among records within the equality tolerance.
  double max_abs_slack_at_equality = 0.0;
  int violations = 0;  ///< records with slack below -violation_tol
  bool all_converged = true;
  double equality_tol = 1e-6;
  double violation_tol = 1e-6;
};

InequalityReport verify_inequality(const ParametricImmersion& im,
                                   const std::vector<Eigen::VectorXd>& points,
                                   const OptimizerOptions& opts = {});

/// Pointwise residuals H^2 - delta0 and the ideality classification:
/// ideal when |residual| stays below the equality tolerance everywhere.
struct IdealityReport {
  std::vector<Eigen::VectorXd> points;
  std::vector<double> residuals;
  double max_abs_residual = 0.0;
  double min_residual = 0.0;
  bool ideal = false;
  int violations = 0;  ///< residuals below -tolerance
  bool all_converged = true;
  double tolerance = 1e-6;
};

IdealityReport ideality_residual(const ParametricImmersion& im,
                                 const std::vector<Eigen::VectorXd>& points,
                                 const OptimizerOptions& opts = {});

/// Uniform random chart points inside the margins; deterministic in the seed.
std::vector<Eigen::VectorXd> sample_chart(const ParametricImmersion& im, int count,
                                          std::uint64_t seed);

/// Built-in shapes with analytic jets. Names and parameter lists:
///   sphere [radius=1], plane, cylinder [radius=1], torus [R=2, r=1],
///   ellipsoid [a=1, b=1, c=1], clifford [a=1/sqrt(2), b=1/sqrt(2)].
ParametricImmersion builtin_immersion(const std::string& name,
                                      const std::vector<double>& params = {});

std::vector<std::string> builtin_immersion_names();

}  // namespace deltaideal
