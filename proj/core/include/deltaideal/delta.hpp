#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "deltaideal/curvature.hpp"
#include "deltaideal/partitions.hpp"

namespace deltaideal {

/// Settings for the multi-start minimization over subspace configurations.
struct OptimizerOptions {
  int restarts = 32;
  int max_iterations = 500;
  double gradient_tol = 1e-8;
  /// Backtracking line search along the normalized descent direction.
  double initial_step = 1.0;
  double step_shrink = 0.5;
  double armijo_slope = 1e-4;
  int max_backtracks = 60;
  std::uint64_t rng_seed = 42;
};

/// k mutually orthogonal subspaces of an n-dimensional tangent space, encoded
/// as consecutive column blocks of one orthogonal n x n frame. Mutual
/// orthogonality is structural; trailing columns are unused padding.
class SubspaceConfig {
 public:
  SubspaceConfig(Eigen::MatrixXd frame, Partition blocks,
                 double tol = kOrthonormalTol);

  const Eigen::MatrixXd& frame() const { return frame_; }
  const Partition& blocks() const { return blocks_; }
  int dimension() const { return static_cast<int>(frame_.rows()); }

  /// The j-th block as a Subspace (j in [0, k)).
  Subspace block(int j) const;

 private:
  Eigen::MatrixXd frame_;
  Partition blocks_;
};

/// Outcome of a delta-invariant computation.
struct DeltaResult {
  double value = 0.0;      ///< tau - objective
  double objective = 0.0;  ///< attained sum of block scalar curvatures
  double scalar = 0.0;     ///< tau of the input tensor
  SubspaceConfig minimizer;
  int restarts_used = 0;
  bool converged = false;  ///< first-order stationarity of the best restart
  double gradient_norm = 0.0;
};

/// Sum of block scalar curvatures of a configuration: the quantity the
/// delta-invariant infimum ranges over.
double configuration_objective(const CurvatureTensor& R, const SubspaceConfig& cfg);

/// The delta-invariant: tau minus the minimum over mutually orthogonal
/// subspace configurations of the summed block scalar curvatures, computed by
/// multi-start Riemannian gradient descent on the orthogonal group with QR
/// retraction. For the empty tuple the infimum term is an empty sum and the
/// optimizer is bypassed. Non-convergence is reported, not thrown.
/// Deterministic for a fixed rng_seed, regardless of thread count.
DeltaResult delta_invariant(const CurvatureTensor& R, const Partition& p,
                            const OptimizerOptions& opts = {});

/// Closed form for constant-curvature input: every block configuration
/// attains the same objective, so
///   delta = (c0/2) (n(n-1) - sum_j n_j(n_j - 1)).
double delta_constant_curvature(int n, double c0, const Partition& p);

/// Monte-Carlo floor: tau minus the minimum objective over `samples` Haar
/// random frames. The sampled minimum can only over-estimate the true
/// infimum, so this value is a one-sided check: the optimizer's objective
/// must not exceed the sampling minimum (up to tolerance).
double delta_bruteforce(const CurvatureTensor& R, const Partition& p,
                        long samples, std::uint64_t rng_seed);

/// One row of the normalized-delta sweep.
struct NormalizedDeltaEntry {
  Partition partition;
  double delta = 0.0;
  double coefficient = 0.0;
  double normalized = 0.0;  ///< delta / coefficient
  bool converged = true;
};

/// Result of maximizing delta/c over all admissible tuples.
struct MaxNormalizedDelta {
  double value = 0.0;
  Partition argmax;
  bool all_converged = true;
  std::vector<NormalizedDeltaEntry> table;
};

/// Maximum of delta/c over the full tuple set for R's dimension. Ties are
/// broken by enumeration order (first attaining tuple wins).
MaxNormalizedDelta max_normalized_delta(const CurvatureTensor& R,
                                        const OptimizerOptions& opts = {});

/// Haar-distributed random orthogonal matrix (QR of a Gaussian matrix with
/// the sign convention that makes the factorization unique).
Eigen::MatrixXd random_orthogonal(int n, std::uint64_t seed);

}  // namespace deltaideal
