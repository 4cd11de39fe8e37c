#pragma once

// Orthogonal classes generated by one-sided Weyl operators on a Schmidt
// seed, the (d-1)^2 subspace basis, and the linear extendability
// certificates.

#include <optional>
#include <span>
#include <vector>

#include "lunmeb/numkit.hpp"
#include "lunmeb/operators.hpp"
#include "lunmeb/states.hpp"

namespace lunmeb::basis {

using numkit::CMatrix;
using numkit::Complex;
using numkit::CVector;
using operators::OperatorBasis;
using operators::OperatorCombination;
using states::SchmidtState;

/// Class n: |psi_nm> = (U_nm (x) I)|seed>, m = 0..d-1.
struct OrthoClass {
  int d;
  int n;
  SchmidtState seed;
  std::vector<CVector> vectors;
};

struct ExtendabilityCertificate {
  int nullspace_dim = 0;
  /// Largest norm of (V (x) I)|seed> over unit-norm coefficient vectors f in
  /// the nullspace.
  double max_orthogonal_norm = 0.0;
  std::optional<OperatorCombination> witness;
};

struct SubspaceBasis {
  int d;
  SchmidtState seed;
  /// Index n * (d-1) + m.
  std::vector<CVector> vectors;
};

/// Result of the termwise system, where each Schmidt term of the class
/// inner products is required to vanish on its own.
struct TermwiseVerdict {
  int nullspace_dim = 0;
  /// |det(diag(p) F_d)| divided by the product of its row norms (Hadamard
  /// ratio, in [0, 1]; 0 when a row vanishes).
  double fourier_hadamard_ratio = 0.0;
  /// The determinant route's verdict: only the trivial solution exists.
  bool determinant_trivial_only = false;
};

OrthoClass build_class(const SchmidtState& seed, int n);
std::vector<OrthoClass> build_all_classes(const SchmidtState& seed);

/// orth[a][b] for labels a = n * d + m; true when |<psi_a|psi_b>| <= rank_tol.
/// Throws std::invalid_argument for a rank-deficient seed.
std::vector<std::vector<bool>> cross_class_orthogonality(const SchmidtState& seed,
                                                        const numkit::Tolerances& tol = {});

/// Columns (U_pq (x) I)|seed>, column index p * r + q with r the label range.
CMatrix produced_vectors(const SchmidtState& seed, OperatorBasis basis);

/// (V (x) I)|seed> for the combination V.
CVector produced_vector(const OperatorCombination& f, const SchmidtState& seed);

/// M[a][(p, q)] = <v_a|(U_pq (x) I)|seed>, built from inner products.
CMatrix extendability_matrix(std::span<const CVector> vectors, const SchmidtState& seed,
                             OperatorBasis basis);

/// Closed form of extendability_matrix for class n under the Weyl basis:
/// M[m][(p, q)] = delta_qm sum_k p_k exp(2 i pi k (p - n) / d).
CMatrix symbolic_class_matrix(const SchmidtState& seed, int n);

ExtendabilityCertificate extendability_check(std::span<const CVector> vectors, const SchmidtState& seed,
                                             OperatorBasis basis, const numkit::Tolerances& tol = {});

/// Termwise coefficient matrix for class n: rows (m, k), columns (p, q),
/// entry delta_qm p_k exp(2 i pi k (p - n) / d).
CMatrix termwise_system(const SchmidtState& seed, int n);

TermwiseVerdict termwise_check(const SchmidtState& seed, int n, const numkit::Tolerances& tol = {});

SubspaceBasis build_subspace_basis(int d);

/// N_nm N_pm sum_k conj(c_k^nm) c_k^pm == delta_np within 1e-10, for all
/// ordered pairs sharing m (including a member with itself).
bool check_class_family(std::span<const states::GeneralClassVector> vs);

}  // namespace lunmeb::basis
