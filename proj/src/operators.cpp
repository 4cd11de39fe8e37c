#include "lunmeb/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace lunmeb::operators {

namespace {

void check_label(int n, int m, int range, const char* what) {
  if (n < 0 || n >= range || m < 0 || m >= range) {
    throw std::invalid_argument(std::string(what) + ": label out of range");
  }
}

}  // namespace

bool OperatorCombination::normalized() const {
  return std::abs(f.squaredNorm() - 1.0) <= 1e-12;
}

LocalOperator weyl(int n, int m, int d) {
  if (d < 1) throw std::invalid_argument("weyl: d must be positive");
  check_label(n, m, d, "weyl");
  CMatrix u = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) u(numkit::mod(k + m, d), k) = numkit::root_of_unity(static_cast<long long>(n) * k, d);
  return {d, std::move(u), WeylLabel{n, m}};
}

LocalOperator subspace_weyl(int n, int m, int d) {
  if (d < 3) throw std::invalid_argument("subspace_weyl: d must be >= 3");
  const int r = d - 1;
  check_label(n, m, r, "subspace_weyl");
  CMatrix u = CMatrix::Zero(d, d);
  for (int k = 0; k < r; ++k) u(numkit::mod(k + m, r), k) = numkit::root_of_unity(static_cast<long long>(n) * k, r);
  return {d, std::move(u), SubspaceWeylLabel{n, m}};
}

int label_range(OperatorBasis basis, int d) {
  return basis == OperatorBasis::Weyl ? d : d - 1;
}

LocalOperator basis_operator(OperatorBasis basis, int p, int q, int d) {
  return basis == OperatorBasis::Weyl ? weyl(p, q, d) : subspace_weyl(p, q, d);
}

LocalOperator combine(const OperatorCombination& f) {
  const int r = label_range(f.basis, f.d);
  if (f.f.rows() != r || f.f.cols() != r) throw std::invalid_argument("combine: coefficient grid has wrong shape");
  CMatrix v = CMatrix::Zero(f.d, f.d);
  for (int p = 0; p < r; ++p) {
    for (int q = 0; q < r; ++q) {
      if (f.f(p, q) != Complex(0.0)) v += f.f(p, q) * basis_operator(f.basis, p, q, f.d).matrix;
    }
  }
  return {f.d, std::move(v), Combination{}};
}

OperatorCombination decompose(const CMatrix& x) {
  if (x.rows() != x.cols()) throw std::invalid_argument("decompose: non-square matrix");
  const int d = static_cast<int>(x.rows());
  OperatorCombination out{d, OperatorBasis::Weyl, CMatrix(d, d)};
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      out.f(p, q) = (weyl(p, q, d).matrix.adjoint() * x).trace() / static_cast<double>(d);
    }
  }
  return out;
}

CVector apply_local(const LocalOperator& op, const CVector& v, Side side) {
  const int d = op.d;
  if (v.size() != static_cast<Eigen::Index>(d) * d) throw std::invalid_argument("apply_local: dimension mismatch");
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  // psi(i, j) = <i j|v>: A acts on rows, B on columns.
  const RowMajor psi = Eigen::Map<const RowMajor>(v.data(), d, d);
  const RowMajor out = side == Side::A ? RowMajor(op.matrix * psi) : RowMajor(psi * op.matrix.transpose());
  return Eigen::Map<const CVector>(out.data(), out.size());
}

Complex hs_inner(const LocalOperator& a, const LocalOperator& b) {
  if (a.d != b.d || a.matrix.rows() != b.matrix.rows()) throw std::invalid_argument("hs_inner: dimension mismatch");
  return (a.matrix.adjoint() * b.matrix).trace();
}

bool is_unitary(const LocalOperator& op, double tol) {
  return numkit::is_unitary(op.matrix, tol);
}

}  // namespace lunmeb::operators
