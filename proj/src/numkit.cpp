#include "lunmeb/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lunmeb::numkit {

void Tolerances::validate() const {
  for (double t : {rank_tol, unit_tol, psd_tol}) {
    if (!(t > 0.0 && t < 1e-3)) {
      throw std::invalid_argument("tolerance must lie in (0, 1e-3), got " + std::to_string(t));
    }
  }
}

CVector basis_ket(int dim, int index) {
  if (dim <= 0 || index < 0 || index >= dim) {
    throw std::invalid_argument("basis_ket: index out of range");
  }
  CVector v = CVector::Zero(dim);
  v[index] = 1.0;
  return v;
}

CVector tensor_product(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a[i] * b;
  }
  return out;
}

CMatrix gram_matrix(std::span<const CVector> vs) {
  const auto n = static_cast<Eigen::Index>(vs.size());
  CMatrix g(n, n);
  if (n == 0) return g;
  const auto dim = vs.front().size();
  for (const auto& v : vs) {
    if (v.size() != dim) throw std::invalid_argument("gram_matrix: dimension mismatch");
  }
  for (Eigen::Index a = 0; a < n; ++a) {
    g(a, a) = vs[a].squaredNorm();
    for (Eigen::Index b = a + 1; b < n; ++b) {
      g(a, b) = vs[a].dot(vs[b]);  // Eigen's dot conjugates the left operand
      g(b, a) = std::conj(g(a, b));
    }
  }
  return g;
}

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.norm());
  return (m - m.adjoint()).norm() <= tol * scale;
}

bool is_unitary(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols())).norm() <= tol;
}

double identity_residual(const CMatrix& g) {
  if (g.rows() != g.cols()) throw std::invalid_argument("identity_residual: non-square");
  if (g.size() == 0) return 0.0;
  return (g - CMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

EigenDecomposition hermitian_eigen(const CMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eigen: non-square input");
  if (!is_hermitian(m, tol.unit_tol)) {
    throw std::invalid_argument("hermitian_eigen: input is not Hermitian");
  }
  // Symmetrise so the solver sees exactly Hermitian data.
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigen: solver did not converge");
  }
  EigenDecomposition out;
  const auto& ev = solver.eigenvalues();
  out.values.assign(ev.data(), ev.data() + ev.size());
  out.vectors = solver.eigenvectors();
  return out;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m, const Tolerances& tol) {
  return hermitian_eigen(m, tol).values;
}

Nullspace nullspace(const CMatrix& m, const Tolerances& tol) {
  Nullspace out;
  const auto cols = m.cols();
  if (cols == 0) return out;
  if (m.rows() == 0) {
    out.dimension = static_cast<int>(cols);
    for (Eigen::Index j = 0; j < cols; ++j) out.basis.push_back(basis_ket(static_cast<int>(cols), static_cast<int>(j)));
    return out;
  }
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  int rank = 0;
  if (smax > 0.0) {
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > tol.rank_tol * smax) ++rank;
    }
  }
  out.rank = rank;
  out.dimension = static_cast<int>(cols) - rank;
  const CMatrix& v = svd.matrixV();
  for (Eigen::Index j = rank; j < cols; ++j) out.basis.emplace_back(v.col(j));
  return out;
}

Complex determinant(const CMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: non-square input");
  if (m.size() == 0) return 1.0;
  return m.partialPivLu().determinant();
}

Complex root_of_unity(long long k, int d) {
  const int r = mod(k, d);
  const double angle = 2.0 * kPi * r / d;
  return {std::cos(angle), std::sin(angle)};
}

CMatrix fourier_matrix(int d) {
  if (d <= 0) throw std::invalid_argument("fourier_matrix: d must be positive");
  CMatrix f(d, d);
  for (int k = 0; k < d; ++k) {
    for (int p = 0; p < d; ++p) f(k, p) = root_of_unity(static_cast<long long>(k) * p, d);
  }
  return f;
}

}  // namespace lunmeb::numkit
