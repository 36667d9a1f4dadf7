#include "deltaideal/delta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "deltaideal/parallel.hpp"

namespace deltaideal {

namespace {

struct BlockLayout {
  std::vector<int> offsets;
  std::vector<int> sizes;
  int used = 0;  // total columns occupied by blocks
};

BlockLayout layout_of(const Partition& p) {
  BlockLayout L;
  int off = 0;
  for (int s : p.parts()) {
    L.offsets.push_back(off);
    L.sizes.push_back(s);
    off += s;
  }
  L.used = off;
  return L;
}

/// Objective via block projectors: sum_j (1/2) <R, P_j (x) P_j>.
double blocked_objective(const CurvatureTensor& R, const Eigen::MatrixXd& X,
                         const BlockLayout& L) {
  const int n = R.dimension();
  const auto& c = R.components();
  double total = 0.0;
  for (std::size_t b = 0; b < L.sizes.size(); ++b) {
    const Eigen::MatrixXd P =
        X.middleCols(L.offsets[b], L.sizes[b]) *
        X.middleCols(L.offsets[b], L.sizes[b]).transpose();
    double acc = 0.0;
    std::size_t p = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          const double pjk = P(j, k);
          if (pjk == 0.0) {
            p += n;
            continue;
          }
          for (int l = 0; l < n; ++l, ++p) {
            acc += c[p] * P(i, l) * pjk;
          }
        }
      }
    }
    total += 0.5 * acc;
  }
  return total;
}

/// Objective and Euclidean gradient with respect to the frame columns.
/// Unused trailing columns get a zero gradient.
double blocked_objective_gradient(const CurvatureTensor& R, const Eigen::MatrixXd& X,
                                  const BlockLayout& L, Eigen::MatrixXd& grad) {
  const int n = R.dimension();
  grad.setZero(n, n);
  double total = 0.0;
  for (std::size_t b = 0; b < L.sizes.size(); ++b) {
    const int off = L.offsets[b];
    const int r = L.sizes[b];
    std::vector<Eigen::MatrixXd> A(r);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < r; ++a) {
      A[a] = R.plane_form(X.col(off + a));
      sum += A[a];
    }
    for (int a = 0; a < r; ++a) {
      const Eigen::VectorXd qa = X.col(off + a);
      for (int bcol = a + 1; bcol < r; ++bcol) {
        total += qa.dot(A[bcol] * qa);
      }
      grad.col(off + a) = 2.0 * ((sum - A[a]) * qa);
    }
  }
  return total;
}

Eigen::MatrixXd qr_retract(const Eigen::MatrixXd& Y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Y);
  Eigen::MatrixXd Q = qr.householderQ();
  Eigen::MatrixXd Rm = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < Q.cols(); ++i) {
    if (Rm(i, i) < 0) Q.col(i) = -Q.col(i);
  }
  return Q;
}

struct RestartOutcome {
  double objective = 0.0;
  Eigen::MatrixXd frame;
  bool converged = false;
  double gradient_norm = 0.0;
};

/// One gradient-descent run on the orthogonal group from the given frame.
RestartOutcome minimize_from(const CurvatureTensor& R, const BlockLayout& L,
                             Eigen::MatrixXd X, const OptimizerOptions& opts) {
  Eigen::MatrixXd grad;
  double f = blocked_objective_gradient(R, X, L, grad);
  RestartOutcome out;
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    // Riemannian gradient: project onto the skew-symmetric tangent at X.
    const Eigen::MatrixXd xtg = X.transpose() * grad;
    const Eigen::MatrixXd skew = 0.5 * (xtg - xtg.transpose());
    const double gnorm = skew.norm();
    if (gnorm < opts.gradient_tol) {
      out.converged = true;
      out.gradient_norm = gnorm;
      break;
    }
    const Eigen::MatrixXd direction = -(X * skew) / gnorm;

    // Backtracking on the normalized direction; the Armijo bound scales
    // linearly with the tensor, so iterates are invariant under R -> aR.
    double t = opts.initial_step;
    bool accepted = false;
    for (int bt = 0; bt < opts.max_backtracks; ++bt) {
      const Eigen::MatrixXd trial = qr_retract(X + t * direction);
      const double ft = blocked_objective(R, trial, L);
      if (ft <= f - opts.armijo_slope * t * gnorm) {
        X = trial;
        f = blocked_objective_gradient(R, X, L, grad);
        accepted = true;
        break;
      }
      t *= opts.step_shrink;
    }
    out.gradient_norm = gnorm;
    if (!accepted) break;  // numerically stationary; gnorm check above decides
  }
  out.objective = f;
  out.frame = std::move(X);
  return out;
}

}  // namespace

SubspaceConfig::SubspaceConfig(Eigen::MatrixXd frame, Partition blocks, double tol)
    : frame_(std::move(frame)), blocks_(std::move(blocks)) {
  const int n = blocks_.ambient_dimension();
  if (frame_.rows() != n || frame_.cols() != n) {
    throw DimensionMismatch("configuration frame must be n x n for the partition's n");
  }
  double dev = (frame_.transpose() * frame_ - Eigen::MatrixXd::Identity(n, n))
                   .cwiseAbs()
                   .maxCoeff();
  if (dev > tol) {
    throw RankError("configuration frame not orthogonal, deviation " + std::to_string(dev));
  }
}

Subspace SubspaceConfig::block(int j) const {
  const auto L = layout_of(blocks_);
  return Subspace(frame_.middleCols(L.offsets.at(j), L.sizes.at(j)));
}

double configuration_objective(const CurvatureTensor& R, const SubspaceConfig& cfg) {
  if (cfg.dimension() != R.dimension()) {
    throw DimensionMismatch("configuration dimension does not match tensor");
  }
  return blocked_objective(R, cfg.frame(), layout_of(cfg.blocks()));
}

Eigen::MatrixXd random_orthogonal(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd G(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) G(i, j) = gauss(rng);
  return qr_retract(G);
}

DeltaResult delta_invariant(const CurvatureTensor& R, const Partition& p,
                            const OptimizerOptions& opts) {
  if (opts.restarts < 1 || opts.gradient_tol <= 0.0 || opts.max_iterations < 1 ||
      opts.initial_step <= 0.0) {
    throw DomainError("optimizer options need restarts >= 1 and positive tolerances");
  }
  const int n = R.dimension();
  if (p.ambient_dimension() != n) {
    throw DimensionMismatch("partition ambient dimension does not match tensor");
  }
  const double tau = scalar_curvature(R);

  if (p.is_empty()) {
    // Empty infimum term; nothing to optimize.
    return DeltaResult{tau, 0.0, tau,
                       SubspaceConfig(Eigen::MatrixXd::Identity(n, n), p),
                       0, true, 0.0};
  }

  const BlockLayout L = layout_of(p);
  std::vector<RestartOutcome> runs(opts.restarts);
  parallel_for(opts.restarts, [&](int r) {
    Eigen::MatrixXd X0 = random_orthogonal(n, mix_seed(opts.rng_seed, r));
    runs[r] = minimize_from(R, L, std::move(X0), opts);
  });

  int best = 0;
  for (int r = 1; r < opts.restarts; ++r) {
    if (runs[r].objective < runs[best].objective) best = r;
  }
  const RestartOutcome& win = runs[best];
  return DeltaResult{tau - win.objective, win.objective, tau,
                     SubspaceConfig(win.frame, p), opts.restarts,
                     win.converged, win.gradient_norm};
}

double delta_constant_curvature(int n, double c0, const Partition& p) {
  if (p.ambient_dimension() != n) {
    throw DimensionMismatch("partition ambient dimension does not match n");
  }
  double blocks = 0.0;
  for (int r : p.parts()) blocks += static_cast<double>(r) * (r - 1);
  return 0.5 * c0 * (static_cast<double>(n) * (n - 1) - blocks);
}

double delta_bruteforce(const CurvatureTensor& R, const Partition& p,
                        long samples, std::uint64_t rng_seed) {
  const int n = R.dimension();
  if (p.ambient_dimension() != n) {
    throw DimensionMismatch("partition ambient dimension does not match tensor");
  }
  const double tau = scalar_curvature(R);
  if (p.is_empty() || samples < 1) return tau;

  const BlockLayout L = layout_of(p);
  // Each sample's frame is derived from its global index, so the minimum does
  // not depend on how the work is split across threads.
  const int threads = std::max(1, worker_thread_count());
  const long chunk = (samples + threads - 1) / threads;
  std::vector<double> minima(threads, std::numeric_limits<double>::infinity());
  parallel_for(threads, [&](int t) {
    const long lo = static_cast<long>(t) * chunk;
    const long hi = std::min(samples, lo + chunk);
    double best = std::numeric_limits<double>::infinity();
    for (long s = lo; s < hi; ++s) {
      Eigen::MatrixXd Q = random_orthogonal(n, mix_seed(rng_seed, static_cast<std::uint64_t>(s)));
      best = std::min(best, blocked_objective(R, Q, L));
    }
    minima[t] = best;
  });
  const double min_obj = *std::min_element(minima.begin(), minima.end());
  return tau - min_obj;
}

MaxNormalizedDelta max_normalized_delta(const CurvatureTensor& R,
                                        const OptimizerOptions& opts) {
  const std::vector<Partition> tuples = enumerate_tuples(R.dimension());
  MaxNormalizedDelta out{-std::numeric_limits<double>::infinity(), tuples.front(), true, {}};
  for (const Partition& p : tuples) {
    const DeltaResult d = delta_invariant(R, p, opts);
    const double c = c_coefficient(p);
    const double normalized = d.value / c;
    out.table.push_back({p, d.value, c, normalized, d.converged});
    if (!d.converged) out.all_converged = false;
    // Exact ties (round spheres attain the maximum at several tuples) must
    // resolve to the first tuple in enumeration order, so a later tuple has
    // to beat the incumbent by more than round-off.
    const double tie_margin = 1e-12 * std::max(1.0, std::abs(normalized));
    if (normalized > out.value + tie_margin) {
      out.value = normalized;
      out.argmax = p;
    }
  }
  return out;
}

}  // namespace deltaideal
