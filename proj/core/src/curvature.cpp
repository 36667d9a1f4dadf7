#include "deltaideal/curvature.hpp"

#include <cmath>
#include <cstddef>

namespace deltaideal {

namespace {

inline std::size_t idx(int n, int i, int j, int k, int l) {
  return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
}

void check_shape(const std::vector<double>& c, int n) {
  if (n < 2) throw DimensionError("curvature tensor needs dimension >= 2, got " + std::to_string(n));
  std::size_t expected = static_cast<std::size_t>(n) * n * n * n;
  if (c.size() != expected) {
    throw DimensionError("component array has " + std::to_string(c.size()) +
                         " entries, expected n^4 = " + std::to_string(expected));
  }
}

}  // namespace

double CurvatureTensor::plane_quadratic(const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& y) const {
  // R(x,y,y,x), contracted as x' A(y) x with A folded on the fly.
  const int n = n_;
  double total = 0.0;
  std::size_t p = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double xy = x[i] * y[j];
      if (xy == 0.0) {
        p += static_cast<std::size_t>(n) * n;
        continue;
      }
      for (int k = 0; k < n; ++k) {
        const double xyk = xy * y[k];
        for (int l = 0; l < n; ++l, ++p) {
          total += c_[p] * xyk * x[l];
        }
      }
    }
  }
  return total;
}

Eigen::MatrixXd CurvatureTensor::plane_form(const Eigen::VectorXd& y) const {
  const int n = n_;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  std::size_t p = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double yj = y[j];
      for (int k = 0; k < n; ++k) {
        const double yjk = yj * y[k];
        if (yjk == 0.0) {
          p += n;
          continue;
        }
        for (int l = 0; l < n; ++l, ++p) {
          A(i, l) += c_[p] * yjk;
        }
      }
    }
  }
  return A;
}

Frame::Frame(Eigen::MatrixXd columns, double tol) : m_(std::move(columns)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1) {
    throw DimensionError("frame must be a square matrix");
  }
  double dev = (m_.transpose() * m_ - Eigen::MatrixXd::Identity(m_.cols(), m_.cols()))
                   .cwiseAbs()
                   .maxCoeff();
  if (dev > tol) {
    throw RankError("frame columns not orthonormal, deviation " + std::to_string(dev));
  }
}

Frame Frame::identity(int n) { return Frame(Eigen::MatrixXd::Identity(n, n)); }

Subspace::Subspace(Eigen::MatrixXd basis, double tol) : m_(std::move(basis)) {
  const int r = static_cast<int>(m_.cols());
  if (r < 2) throw RankError("subspace rank must be >= 2, got " + std::to_string(r));
  if (r > m_.rows()) {
    throw DimensionError("subspace rank exceeds ambient dimension");
  }
  double dev = (m_.transpose() * m_ - Eigen::MatrixXd::Identity(r, r)).cwiseAbs().maxCoeff();
  if (dev > tol) {
    throw RankError("subspace basis not orthonormal, deviation " + std::to_string(dev));
  }
}

SymmetryDeviation symmetry_deviation(const std::vector<double>& c, int n) {
  check_shape(c, n);
  SymmetryDeviation dev;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double r = c[idx(n, i, j, k, l)];
          dev.antisymmetry = std::max(dev.antisymmetry,
                                      std::abs(r + c[idx(n, j, i, k, l)]));
          dev.antisymmetry = std::max(dev.antisymmetry,
                                      std::abs(r + c[idx(n, i, j, l, k)]));
          dev.pair = std::max(dev.pair, std::abs(r - c[idx(n, k, l, i, j)]));
          dev.bianchi = std::max(dev.bianchi,
                                 std::abs(r + c[idx(n, i, k, l, j)] + c[idx(n, i, l, j, k)]));
        }
  return dev;
}

std::vector<double> symmetrize_components(const std::vector<double>& c, int n) {
  check_shape(c, n);
  std::vector<double> s(c.size());
  // Orbit average over the 8-element group generated by the two sign flips
  // and the pair swap.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = c[idx(n, i, j, k, l)] - c[idx(n, j, i, k, l)] -
                     c[idx(n, i, j, l, k)] + c[idx(n, j, i, l, k)] +
                     c[idx(n, k, l, i, j)] - c[idx(n, l, k, i, j)] -
                     c[idx(n, k, l, j, i)] + c[idx(n, l, k, j, i)];
          s[idx(n, i, j, k, l)] = v / 8.0;
        }
  // Remove the fully antisymmetric part; what is left satisfies the cyclic
  // identity while keeping the other symmetries.
  std::vector<double> out(s.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double b = (s[idx(n, i, j, k, l)] + s[idx(n, i, k, l, j)] +
                      s[idx(n, i, l, j, k)]) / 3.0;
          out[idx(n, i, j, k, l)] = s[idx(n, i, j, k, l)] - b;
        }
  return out;
}

CurvatureTensor validate_curvature_tensor(const std::vector<double>& c, int n,
                                          double tol) {
  SymmetryDeviation dev = symmetry_deviation(c, n);
  if (dev.antisymmetry > tol) throw SymmetryViolation("antisymmetry", dev.antisymmetry);
  if (dev.pair > tol) throw SymmetryViolation("pair symmetry", dev.pair);
  if (dev.bianchi > tol) throw SymmetryViolation("first Bianchi identity", dev.bianchi);
  return CurvatureTensor(n, symmetrize_components(c, n));
}

CurvatureTensor constant_curvature_tensor(int n, double c0) {
  if (n < 2) throw DimensionError("space form needs dimension >= 2, got " + std::to_string(n));
  std::vector<double> c(static_cast<std::size_t>(n) * n * n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = c0 * ((i == l && j == k ? 1.0 : 0.0) -
                           (i == k && j == l ? 1.0 : 0.0));
          c[idx(n, i, j, k, l)] = v;
        }
  return CurvatureTensor(n, std::move(c));
}

double sectional_curvature(const CurvatureTensor& R, const Eigen::VectorXd& X,
                           const Eigen::VectorXd& Y) {
  if (X.size() != R.dimension() || Y.size() != R.dimension()) {
    throw DimensionMismatch("plane vectors do not match tensor dimension");
  }
  const double xx = X.squaredNorm();
  const double yy = Y.squaredNorm();
  const double xy = X.dot(Y);
  const double gram = xx * yy - xy * xy;
  if (gram <= kDegeneratePlaneTol) {
    throw DegeneratePlane("Gram determinant " + std::to_string(gram) +
                          " at or below cutoff");
  }
  return R.plane_quadratic(X, Y) / gram;
}

double scalar_curvature(const CurvatureTensor& R, const Frame& F) {
  if (F.dimension() != R.dimension()) {
    throw DimensionMismatch("frame dimension does not match tensor");
  }
  const int n = R.dimension();
  double tau = 0.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd ei = F.vector(i);
    const Eigen::MatrixXd A = R.plane_form(ei);
    for (int j = i + 1; j < n; ++j) {
      const Eigen::VectorXd ej = F.vector(j);
      tau += ej.dot(A * ej);
    }
  }
  return tau;
}

double scalar_curvature(const CurvatureTensor& R) {
  const int n = R.dimension();
  double tau = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) tau += R(i, j, j, i);
  return tau;
}

double subspace_scalar_curvature(const CurvatureTensor& R, const Subspace& L) {
  if (L.ambient_dimension() != R.dimension()) {
    throw DimensionMismatch("subspace ambient dimension does not match tensor");
  }
  const int r = L.rank();
  double tau = 0.0;
  for (int a = 0; a < r; ++a) {
    const Eigen::VectorXd ea = L.basis().col(a);
    const Eigen::MatrixXd A = R.plane_form(ea);
    for (int b = a + 1; b < r; ++b) {
      const Eigen::VectorXd eb = L.basis().col(b);
      tau += eb.dot(A * eb);
    }
  }
  return tau;
}

CurvatureTensor rotate_tensor(const CurvatureTensor& R, const Eigen::MatrixXd& Q) {
  const int n = R.dimension();
  if (Q.rows() != n || Q.cols() != n) {
    throw DimensionMismatch("rotation matrix does not match tensor dimension");
  }
  // Contract one slot at a time: R'(a,b,c,d) = R(i,j,k,l) Q[i,a] Q[j,b] Q[k,c] Q[l,d].
  auto contract_first = [n](const std::vector<double>& src, const Eigen::MatrixXd& M) {
    std::vector<double> dst(src.size(), 0.0);
    const std::size_t block = static_cast<std::size_t>(n) * n * n;
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < n; ++i) {
        const double w = M(i, a);
        if (w == 0.0) continue;
        const double* in = src.data() + i * block;
        double* out = dst.data() + a * block;
        for (std::size_t t = 0; t < block; ++t) out[t] += w * in[t];
      }
    return dst;
  };
  // Cycle the slots: after contracting the leading slot, rotate indices so the
  // next original slot becomes leading. Four passes restore the order.
  auto cycle = [n](const std::vector<double>& src) {
    std::vector<double> dst(src.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            dst[idx(n, j, k, l, i)] = src[idx(n, i, j, k, l)];
    return dst;
  };
  std::vector<double> work = R.components();
  for (int pass = 0; pass < 4; ++pass) {
    work = cycle(contract_first(work, Q));
  }
  return validate_curvature_tensor(work, n, 1e-6);
}

CurvatureTensor scale_tensor(const CurvatureTensor& R, double a) {
  std::vector<double> c = R.components();
  for (double& v : c) v *= a;
  return validate_curvature_tensor(c, R.dimension(), 1e-6);
}

}  // namespace deltaideal
