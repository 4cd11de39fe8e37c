#pragma once

// Small dense complex linear algebra used throughout the library.
//
// Dimensions stay tiny (single-system d <= ~16, bipartite d^2 <= 256), so
// everything is plain dense Eigen storage. All routines are pure.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace lunmeb::numkit {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;

struct Tolerances {
  double rank_tol = 1e-10;
  double unit_tol = 1e-12;
  double psd_tol = 1e-10;

  // Throws std::invalid_argument unless every field is in (0, 1e-3).
  void validate() const;
};

/// Unit vector |index> of length dim.
CVector basis_ket(int dim, int index);

/// Kronecker product: result[i * b.size() + j] = a[i] * b[j].
CVector tensor_product(const CVector& a, const CVector& b);

/// G[a][b] = <v_a|v_b>, conjugate-linear in the first slot.
CMatrix gram_matrix(std::span<const CVector> vs);

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // columns match values
};

/// Spectral decomposition of a Hermitian matrix. Throws std::invalid_argument
/// if the input is not square or deviates from Hermitian by more than
/// unit_tol (relative to its norm).
EigenDecomposition hermitian_eigen(const CMatrix& m, const Tolerances& tol = {});

/// Eigenvalues only, ascending.
std::vector<double> hermitian_eigenvalues(const CMatrix& m, const Tolerances& tol = {});

struct Nullspace {
  int dimension = 0;
  int rank = 0;
  std::vector<CVector> basis;  // orthonormal
};

/// Right nullspace by SVD. Singular values below rank_tol * sigma_max count
/// as zero; the zero matrix has full nullspace.
Nullspace nullspace(const CMatrix& m, const Tolerances& tol = {});

/// Throws std::invalid_argument for non-square input.
Complex determinant(const CMatrix& m);

/// Unnormalised DFT matrix F[k][p] = exp(2 i pi k p / d).
CMatrix fourier_matrix(int d);

/// exp(2 i pi k / d), with k reduced mod d first so large exponents stay exact.
Complex root_of_unity(long long k, int d);

/// Largest-singular-value norm.
double operator_norm(const CMatrix& m);

bool is_hermitian(const CMatrix& m, double tol);
bool is_unitary(const CMatrix& m, double tol);

/// max |G - I| entrywise; G must be square.
double identity_residual(const CMatrix& g);

/// Non-negative modulus.
inline int mod(long long a, int n) {
  const long long r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

}  // namespace lunmeb::numkit
