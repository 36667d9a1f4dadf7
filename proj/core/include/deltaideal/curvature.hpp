#pragma once

#include <Eigen/Dense>
#include <vector>

#include "deltaideal/errors.hpp"

namespace deltaideal {

/// Default tolerances for pointwise curvature data.
inline constexpr double kSymmetryTol = 1e-9;
inline constexpr double kOrthonormalTol = 1e-10;
inline constexpr double kDegeneratePlaneTol = 1e-12;

/// The (0,4) curvature array R at a point of an n-dimensional tangent space,
/// stored flat in row-major order R[i][j][k][l]. Components are pure numbers
/// (curvature units 1/length^2). Immutable once constructed.
///
/// Index convention: R(X,Y,Z,W) = <R(X,Y)Z, W>, so the sectional curvature of
/// an orthonormal pair (X,Y) is R(X,Y,Y,X). Algebraic symmetries:
///   R[ijkl] = -R[jikl] = -R[ijlk],  R[ijkl] = R[klij],
///   R[ijkl] + R[iklj] + R[iljk] = 0.
class CurvatureTensor {
 public:
  int dimension() const { return n_; }

  double operator()(int i, int j, int k, int l) const {
    return c_[((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l];
  }

  const std::vector<double>& components() const { return c_; }

  /// R(x,y,y,x) without normalization; all four slots contracted.
  double plane_quadratic(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  /// A(y)[i][l] = sum_{jk} R[ijkl] y_j y_k. Symmetric; R(x,y,y,x) = x'A(y)x.
  Eigen::MatrixXd plane_form(const Eigen::VectorXd& y) const;

 private:
  friend CurvatureTensor validate_curvature_tensor(const std::vector<double>&, int, double);
  friend CurvatureTensor constant_curvature_tensor(int, double);
  CurvatureTensor(int n, std::vector<double> c) : n_(n), c_(std::move(c)) {}

  int n_;
  std::vector<double> c_;
};

/// Orthonormal basis e_1..e_n of an n-dimensional inner-product space,
/// stored as the columns of an orthogonal matrix.
class Frame {
 public:
  explicit Frame(Eigen::MatrixXd columns, double tol = kOrthonormalTol);
  static Frame identity(int n);

  int dimension() const { return static_cast<int>(m_.cols()); }
  const Eigen::MatrixXd& matrix() const { return m_; }
  Eigen::VectorXd vector(int i) const { return m_.col(i); }

 private:
  Eigen::MatrixXd m_;
};

/// An r-dimensional subspace of an n-dimensional space, r >= 2, given by an
/// n x r matrix with orthonormal columns.
class Subspace {
 public:
  explicit Subspace(Eigen::MatrixXd basis, double tol = kOrthonormalTol);

  int ambient_dimension() const { return static_cast<int>(m_.rows()); }
  int rank() const { return static_cast<int>(m_.cols()); }
  const Eigen::MatrixXd& basis() const { return m_; }

 private:
  Eigen::MatrixXd m_;
};

/// Deviations of a raw component array from each symmetry family.
struct SymmetryDeviation {
  double antisymmetry = 0.0;
  double pair = 0.0;
  double bianchi = 0.0;
};

/// Measures how far a flat [n][n][n][n] array is from each symmetry family.
SymmetryDeviation symmetry_deviation(const std::vector<double>& components, int n);

/// Projects a flat [n][n][n][n] array onto the space of algebraic curvature
/// tensors: orbit average over the sign/pair symmetry group followed by
/// removal of the fully antisymmetric part. Exact inputs pass through
/// unchanged up to round-off.
std::vector<double> symmetrize_components(const std::vector<double>& components, int n);

/// Checks the three symmetry families within tol, then returns the tensor
/// built from the symmetrized components. Throws SymmetryViolation naming the
/// worst family, or DimensionError if n < 2 or the array is not n^4-shaped.
CurvatureTensor validate_curvature_tensor(const std::vector<double>& components,
                                          int n, double tol = kSymmetryTol);

/// The space-form model R(X,Y,Z,W) = c0 (<X,W><Y,Z> - <X,Z><Y,W>); every
/// 2-plane has sectional curvature exactly c0, and the unit n-sphere
/// corresponds to c0 = +1.
CurvatureTensor constant_curvature_tensor(int n, double c0);

/// K(X ^ Y) = R(X,Y,Y,X) / (|X|^2 |Y|^2 - <X,Y>^2). Throws DegeneratePlane
/// when the Gram determinant is at or below the cutoff.
double sectional_curvature(const CurvatureTensor& R, const Eigen::VectorXd& X,
                           const Eigen::VectorXd& Y);

/// Scalar curvature: the sum of sectional curvatures over the coordinate
/// 2-planes of the frame. Frame-independent.
double scalar_curvature(const CurvatureTensor& R, const Frame& F);

/// Scalar curvature in the canonical coordinate frame.
double scalar_curvature(const CurvatureTensor& R);

/// Scalar curvature of the subspace L: the same sum restricted to an
/// orthonormal basis of L. Independent of the basis chosen for L.
double subspace_scalar_curvature(const CurvatureTensor& R, const Subspace& L);

/// Conjugates R by the orthogonal matrix Q: R'(X,Y,Z,W) = R(QX,QY,QZ,QW).
/// Used by invariance tests; the result is validated.
CurvatureTensor rotate_tensor(const CurvatureTensor& R, const Eigen::MatrixXd& Q);

/// Rescales all components by a.
CurvatureTensor scale_tensor(const CurvatureTensor& R, double a);

}  // namespace deltaideal
