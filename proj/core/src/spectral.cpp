#include "deltaideal/spectral.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace deltaideal {

namespace {

constexpr double kZeroModeThreshold = 1e-8;

/// Removes the Euclidean mean: projection against the kernel of the
/// stiffness matrix (the constant vector).
void project_out_constants(Eigen::VectorXd& v) {
  v.array() -= v.mean();
}

/// Removes the mass-weighted mean: mass-orthogonality to constants.
void project_out_constants_mass(Eigen::VectorXd& v, const Eigen::VectorXd& mass,
                                double total_mass) {
  const double mean = mass.dot(v) / total_mass;
  v.array() -= mean;
}

}  // namespace

MeshOperators build_mesh_laplacian(const TriMesh& m) {
  validate_mesh(m);
  const int classes = m.vertex_count();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(m.faces.size() * 12);
  Eigen::VectorXd mass = Eigen::VectorXd::Zero(classes);

  for (int f = 0; f < m.face_count(); ++f) {
    const auto& tri = m.faces[f];
    const Eigen::Vector3d p[3] = {m.vertices[tri[0]], m.vertices[tri[1]],
                                  m.vertices[tri[2]]};
    const double area = face_area(m, f);
    for (int corner = 0; corner < 3; ++corner) {
      mass[m.class_of(tri[corner])] += area / 3.0;
      // Edge opposite this corner.
      const int i = (corner + 1) % 3, j = (corner + 2) % 3;
      const Eigen::Vector3d u = p[i] - p[corner];
      const Eigen::Vector3d v = p[j] - p[corner];
      const double cot = u.dot(v) / u.cross(v).norm();
      const double w = 0.5 * cot;
      const int ci = m.class_of(tri[i]), cj = m.class_of(tri[j]);
      triplets.emplace_back(ci, cj, -w);
      triplets.emplace_back(cj, ci, -w);
      triplets.emplace_back(ci, ci, w);
      triplets.emplace_back(cj, cj, w);
    }
  }

  MeshOperators ops;
  ops.stiffness.resize(classes, classes);
  ops.stiffness.setFromTriplets(triplets.begin(), triplets.end());
  ops.stiffness.makeCompressed();
  ops.mass = std::move(mass);
  return ops;
}

SpectralResult lambda1_mesh(const TriMesh& m, const SpectralOptions& opts) {
  const MeshOperators ops = build_mesh_laplacian(m);
  const auto& S = ops.stiffness;
  const auto& mass = ops.mass;
  const int n = static_cast<int>(mass.size());
  const double total_mass = mass.sum();
  const long budget = opts.budget_factor * static_cast<long>(n);

  const Eigen::VectorXd jacobi = S.diagonal().cwiseInverse();

  // Seeded start vector, mass-orthogonal to constants, mass-normalized.
  std::mt19937_64 rng(opts.rng_seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = gauss(rng);
  project_out_constants_mass(x, mass, total_mass);
  x /= std::sqrt(mass.dot(x.cwiseProduct(x)));

  long iterations = 0;
  double rho = x.dot(S * x);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  bool converged = false;

  for (int outer = 0; outer < opts.max_outer && !converged; ++outer) {
    // Inner solve S y = M x by deflated Jacobi-preconditioned CG, warm
    // started from the previous iterate.
    const Eigen::VectorXd b = mass.cwiseProduct(x);
    const double b_norm = b.norm();
    Eigen::VectorXd r = b - S * y;
    project_out_constants(r);
    Eigen::VectorXd z = jacobi.cwiseProduct(r);
    project_out_constants(z);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    double best_residual = r.norm();
    int since_improvement = 0;
    while (r.norm() > opts.cg_rel_tol * b_norm) {
      if (++iterations > budget) throw SolverFailure(budget);
      const Eigen::VectorXd Sp = S * p;
      const double pSp = p.dot(Sp);
      if (pSp <= 0.0) break;  // numerically exhausted search direction
      const double alpha = rz / pSp;
      y += alpha * p;
      r -= alpha * Sp;
      project_out_constants(r);
      // Round-off floor: stop when the residual no longer improves.
      const double rnorm = r.norm();
      if (rnorm < 0.5 * best_residual) {
        best_residual = rnorm;
        since_improvement = 0;
      } else if (++since_improvement > 50) {
        break;
      }
      z = jacobi.cwiseProduct(r);
      project_out_constants(z);
      const double rz_next = r.dot(z);
      p = z + (rz_next / rz) * p;
      rz = rz_next;
    }

    project_out_constants_mass(y, mass, total_mass);
    const double y_mass_norm = std::sqrt(mass.dot(y.cwiseProduct(y)));
    if (!(y_mass_norm > 0.0)) throw SolverFailure(iterations);
    x = y / y_mass_norm;

    const double rho_next = x.dot(S * x);
    if (std::abs(rho_next - rho) <= opts.rayleigh_rel_tol * std::max(std::abs(rho_next), 1e-300)) {
      rho = rho_next;
      converged = true;
      break;
    }
    rho = rho_next;
  }

  if (!converged) throw SolverFailure(iterations);
  if (rho <= kZeroModeThreshold) {
    throw SolverFailure(iterations);  // landed in the zero mode: no spectral gap found
  }

  // Deterministic sign: largest-magnitude entry positive.
  int imax = 0;
  for (int i = 1; i < n; ++i) {
    if (std::abs(x[i]) > std::abs(x[imax])) imax = i;
  }
  if (x[imax] < 0) x = -x;

  SpectralResult result;
  result.lambda1 = rho;
  result.eigenvector = std::move(x);
  result.solver_iterations = iterations;
  result.mesh_size = {m.vertex_count(), m.face_count()};
  return result;
}

Eigen::VectorXd lift_through_identification(const TriMesh& quotient,
                                            const Eigen::VectorXd& base_function) {
  if (!quotient.has_identification()) {
    throw MismatchedPair("mesh has no identification map to lift through");
  }
  if (base_function.size() != quotient.vertex_count()) {
    throw MismatchedPair("function size does not match identification classes");
  }
  Eigen::VectorXd lifted(quotient.geometric_vertex_count());
  for (int v = 0; v < quotient.geometric_vertex_count(); ++v) {
    lifted[v] = base_function[quotient.identification[v]];
  }
  return lifted;
}

bool verify_pullback(const TriMesh& cover, const SpectralResult& cover_result,
                     const TriMesh& quotient, const SpectralResult& base_result,
                     double tol, PullbackDetail* detail) {
  if (!quotient.has_identification() ||
      quotient.geometric_vertex_count() != cover.geometric_vertex_count() ||
      cover.has_identification()) {
    throw MismatchedPair("inputs are not a cover/quotient pair");
  }
  if (cover_result.eigenvector.size() != cover.vertex_count() ||
      base_result.eigenvector.size() != quotient.vertex_count()) {
    throw MismatchedPair("spectral results do not match the meshes");
  }

  PullbackDetail d;
  d.eigenvalue_order = base_result.lambda1 >= cover_result.lambda1 - tol;

  // The lifted base eigenvector must satisfy the cover eigenproblem: its
  // Rayleigh quotient on the cover operators equals lambda1(base).
  const MeshOperators cover_ops = build_mesh_laplacian(cover);
  const Eigen::VectorXd lifted =
      lift_through_identification(quotient, base_result.eigenvector);
  const double num = lifted.dot(cover_ops.stiffness * lifted);
  const double den = cover_ops.mass.dot(lifted.cwiseProduct(lifted));
  d.lifted_rayleigh = num / den;
  d.rayleigh_deviation = std::abs(d.lifted_rayleigh - base_result.lambda1);
  d.lift_consistent = d.rayleigh_deviation <= tol;

  if (detail) *detail = d;
  return d.eigenvalue_order && d.lift_consistent;
}

}  // namespace deltaideal
