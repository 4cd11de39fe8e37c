#include "lunmeb/basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lunmeb::basis {

namespace {

void check_vectors(std::span<const CVector> vectors, int d) {
  for (const auto& v : vectors) {
    if (v.size() != static_cast<Eigen::Index>(d) * d) {
      throw std::invalid_argument("extendability: vector dimension does not match seed");
    }
  }
}

}  // namespace

OrthoClass build_class(const SchmidtState& seed, int n) {
  const int d = seed.dim();
  if (n < 0 || n >= d) throw std::invalid_argument("build_class: class label out of range");
  const CVector phi = states::to_vector(seed);
  OrthoClass out{d, n, seed, {}};
  out.vectors.reserve(d);
  for (int m = 0; m < d; ++m) out.vectors.push_back(operators::apply_local(operators::weyl(n, m, d), phi));
  return out;
}

std::vector<OrthoClass> build_all_classes(const SchmidtState& seed) {
  std::vector<OrthoClass> out;
  out.reserve(seed.dim());
  for (int n = 0; n < seed.dim(); ++n) out.push_back(build_class(seed, n));
  return out;
}

std::vector<std::vector<bool>> cross_class_orthogonality(const SchmidtState& seed, const numkit::Tolerances& tol) {
  if (!seed.full_rank()) throw std::invalid_argument("cross_class_orthogonality: seed must have full Schmidt rank");
  std::vector<CVector> all;
  for (auto& cls : build_all_classes(seed)) {
    for (auto& v : cls.vectors) all.push_back(std::move(v));
  }
  const CMatrix g = numkit::gram_matrix(all);
  const auto count = all.size();
  std::vector<std::vector<bool>> orth(count, std::vector<bool>(count));
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = 0; b < count; ++b) orth[a][b] = std::abs(g(a, b)) <= tol.rank_tol;
  }
  return orth;
}

CMatrix produced_vectors(const SchmidtState& seed, OperatorBasis basis) {
  const int d = seed.dim();
  const int r = operators::label_range(basis, d);
  const CVector phi = states::to_vector(seed);
  CMatrix cols(d * d, r * r);
  for (int p = 0; p < r; ++p) {
    for (int q = 0; q < r; ++q) {
      cols.col(p * r + q) = operators::apply_local(operators::basis_operator(basis, p, q, d), phi);
    }
  }
  return cols;
}

CVector produced_vector(const OperatorCombination& f, const SchmidtState& seed) {
  if (f.d != seed.dim()) throw std::invalid_argument("produced_vector: dimension mismatch");
  return operators::apply_local(operators::combine(f), states::to_vector(seed));
}

CMatrix extendability_matrix(std::span<const CVector> vectors, const SchmidtState& seed, OperatorBasis basis) {
  check_vectors(vectors, seed.dim());
  const CMatrix cols = produced_vectors(seed, basis);
  CMatrix m(static_cast<Eigen::Index>(vectors.size()), cols.cols());
  for (std::size_t a = 0; a < vectors.size(); ++a) {
    for (Eigen::Index c = 0; c < cols.cols(); ++c) m(a, c) = vectors[a].dot(cols.col(c));
  }
  return m;
}

CMatrix symbolic_class_matrix(const SchmidtState& seed, int n) {
  const int d = seed.dim();
  const auto p = seed.probabilities();
  CMatrix m = CMatrix::Zero(d, d * d);
  for (int row = 0; row < d; ++row) {
    for (int pp = 0; pp < d; ++pp) {
      Complex s = 0.0;
      for (int k = 0; k < d; ++k) s += p[k] * numkit::root_of_unity(static_cast<long long>(k) * (pp - n), d);
      m(row, pp * d + row) = s;
    }
  }
  return m;
}

ExtendabilityCertificate extendability_check(std::span<const CVector> vectors, const SchmidtState& seed,
                                             OperatorBasis basis, const numkit::Tolerances& tol) {
  const CMatrix m = extendability_matrix(vectors, seed, basis);
  const auto null = numkit::nullspace(m, tol);
  ExtendabilityCertificate cert;
  cert.nullspace_dim = null.dimension;
  if (null.dimension == 0) return cert;

  const int r = operators::label_range(basis, seed.dim());
  CMatrix kernel(r * r, null.dimension);
  for (int i = 0; i < null.dimension; ++i) kernel.col(i) = null.basis[i];
  // Gram of the produced vectors over an orthonormal kernel basis; its top
  // eigenpair gives the largest producible orthogonal vector.
  const CMatrix produced = produced_vectors(seed, basis) * kernel;
  const auto eig = numkit::hermitian_eigen(produced.adjoint() * produced, tol);
  const double top = std::max(eig.values.back(), 0.0);
  if (std::sqrt(top) <= tol.rank_tol) return cert;

  cert.max_orthogonal_norm = std::sqrt(top);
  const CVector f = kernel * eig.vectors.col(eig.vectors.cols() - 1);
  OperatorCombination w{seed.dim(), basis, CMatrix(r, r)};
  for (int p = 0; p < r; ++p) {
    for (int q = 0; q < r; ++q) w.f(p, q) = f[p * r + q];
  }
  cert.witness = std::move(w);
  return cert;
}

CMatrix termwise_system(const SchmidtState& seed, int n) {
  const int d = seed.dim();
  if (n < 0 || n >= d) throw std::invalid_argument("termwise_system: class label out of range");
  const auto p = seed.probabilities();
  CMatrix m = CMatrix::Zero(d * d, d * d);
  for (int row_m = 0; row_m < d; ++row_m) {
    for (int k = 0; k < d; ++k) {
      for (int pp = 0; pp < d; ++pp) {
        m(row_m * d + k, pp * d + row_m) = p[k] * numkit::root_of_unity(static_cast<long long>(k) * (pp - n), d);
      }
    }
  }
  return m;
}

TermwiseVerdict termwise_check(const SchmidtState& seed, int n, const numkit::Tolerances& tol) {
  TermwiseVerdict v;
  v.nullspace_dim = numkit::nullspace(termwise_system(seed, n), tol).dimension;

  // Determinant route: every m-block is diag(p_k w^{-nk}) F_d, so one block
  // decides for all of them.
  const int d = seed.dim();
  const auto p = seed.probabilities();
  CMatrix block = numkit::fourier_matrix(d);
  double row_norms = 1.0;
  for (int k = 0; k < d; ++k) {
    block.row(k) *= p[k] * numkit::root_of_unity(-static_cast<long long>(n) * k, d);
    row_norms *= block.row(k).norm();
  }
  v.fourier_hadamard_ratio = row_norms > 0.0 ? std::abs(numkit::determinant(block)) / row_norms : 0.0;
  v.determinant_trivial_only = v.fourier_hadamard_ratio > tol.rank_tol;
  return v;
}

SubspaceBasis build_subspace_basis(int d) {
  if (d < 3) throw std::invalid_argument("build_subspace_basis: d must be >= 3");
  const auto seed = states::subspace_max_entangled(d);
  const CVector phi = states::to_vector(seed);
  SubspaceBasis out{d, seed, {}};
  for (int n = 0; n < d - 1; ++n) {
    for (int m = 0; m < d - 1; ++m) out.vectors.push_back(operators::apply_local(operators::subspace_weyl(n, m, d), phi));
  }
  return out;
}

bool check_class_family(std::span<const states::GeneralClassVector> vs) {
  constexpr double kTol = 1e-10;
  for (const auto& a : vs) {
    for (const auto& b : vs) {
      if (a.m != b.m) continue;
      if (a.dim() != b.dim()) throw std::invalid_argument("check_class_family: mixed dimensions");
      Complex s = 0.0;
      for (int k = 0; k < a.dim(); ++k) s += std::conj(a.c[k]) * b.c[k];
      s *= a.normalization() * b.normalization();
      const double expected = a.n == b.n ? 1.0 : 0.0;
      if (std::abs(s - expected) > kTol) return false;
    }
  }
  return true;
}

}  // namespace lunmeb::basis
