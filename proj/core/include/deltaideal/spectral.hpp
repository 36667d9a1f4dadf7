#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <utility>

#include "deltaideal/mesh.hpp"

namespace deltaideal {

/// Discrete Laplace--Beltrami operators of a closed triangle mesh:
/// cotangent-weight stiffness (symmetric positive semidefinite, zero row
/// sums) and lumped barycentric-area mass (positive diagonal). When the mesh
/// carries an identification map, rows and columns of identified vertices
/// are merged, so the operators act on identification classes.
struct MeshOperators {
  Eigen::SparseMatrix<double> stiffness;
  Eigen::VectorXd mass;
};

MeshOperators build_mesh_laplacian(const TriMesh& m);

struct SpectralOptions {
  double rayleigh_rel_tol = 1e-10;
  /// Total inner-iteration budget is budget_factor * vertex_count.
  long budget_factor = 10;
  double cg_rel_tol = 1e-10;
  int max_outer = 200;
  std::uint64_t rng_seed = 42;
};

struct SpectralResult {
  double lambda1 = 0.0;
  Eigen::VectorXd eigenvector;  ///< class-indexed, mass-orthogonal to constants
  long solver_iterations = 0;
  std::pair<int, int> mesh_size{0, 0};  ///< (vertex count, face count)
};

/// Smallest eigenvalue above the zero-mode threshold (1e-8) of the
/// generalized problem  stiffness v = lambda mass v,  by inverse power
/// iteration with conjugate-gradient inner solves, Jacobi preconditioning,
/// and deflation of the constant vector. No factorization or shift is used.
/// Throws SolverFailure when the iteration budget runs out.
SpectralResult lambda1_mesh(const TriMesh& m, const SpectralOptions& opts = {});

/// Detailed numbers behind a pullback check.
struct PullbackDetail {
  bool eigenvalue_order = false;   ///< lambda1(base) >= lambda1(cover) - tol
  bool lift_consistent = false;    ///< lifted base vector reproduces lambda1(base)
  double lifted_rayleigh = 0.0;
  double rayleigh_deviation = 0.0;
};

/// Checks that the base (quotient) spectrum pulls back into the cover's:
/// lambda1(base) >= lambda1(cover) - tol, and the base eigenvector lifted
/// through the identification map attains Rayleigh quotient lambda1(base) on
/// the cover within tol. `quotient` must be the identified copy of `cover`.
/// Throws MismatchedPair when the meshes are not a covering pair.
bool verify_pullback(const TriMesh& cover, const SpectralResult& cover_result,
                     const TriMesh& quotient, const SpectralResult& base_result,
                     double tol, PullbackDetail* detail = nullptr);

/// Lifts a class-indexed function on the quotient to the cover's geometric
/// vertices (constant on identification fibers by construction).
Eigen::VectorXd lift_through_identification(const TriMesh& quotient,
                                            const Eigen::VectorXd& base_function);

}  // namespace deltaideal
