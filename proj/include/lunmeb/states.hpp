#pragma once

// Bipartite pure states in Schmidt form, sum_k C_k |kk>.

#include <vector>

#include "lunmeb/numkit.hpp"

namespace lunmeb::states {

using numkit::Complex;
using numkit::CVector;

class SchmidtState {
 public:
  int dim() const { return d_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  /// p_k = C_k^2
  std::vector<double> probabilities() const;
  /// Smallest p_k. Input order is not assumed sorted.
  double p0() const;
  bool full_rank() const { return full_rank_; }

  friend SchmidtState make_schmidt_state(int d, std::vector<double> coeffs);

 private:
  SchmidtState(int d, std::vector<double> coeffs, bool full_rank)
      : d_(d), coeffs_(std::move(coeffs)), full_rank_(full_rank) {}

  int d_;
  std::vector<double> coeffs_;
  bool full_rank_;
};

/// Validates and stores a Schmidt state. Coefficients are renormalised when
/// sum C_k^2 is within 1e-6 of one; larger deviations, negative or
/// non-finite entries, wrong length and d < 2 throw std::invalid_argument.
SchmidtState make_schmidt_state(int d, std::vector<double> coeffs);

/// Same, with the input given as probabilities p_k (C_k = sqrt(p_k)).
SchmidtState from_probabilities(int d, const std::vector<double>& probs);

/// sum_k C_k |kk>, dimension d^2.
CVector to_vector(const SchmidtState& s);

/// (1/sqrt(d-1)) sum_{k<d-1} |kk>; requires d >= 3.
SchmidtState subspace_max_entangled(int d);

/// Maximally entangled state on the full d x d space.
SchmidtState max_entangled(int d);

/// Von Neumann entropy of either reduced state, in bits.
double entanglement_entropy(const SchmidtState& s);

/// Partial trace over subsystem B of a d^2 pure state.
numkit::CMatrix reduced_density_a(const CVector& v, int d);
/// Partial trace over subsystem A.
numkit::CMatrix reduced_density_b(const CVector& v, int d);

/// One member of a general class family: N sum_j c_j |j (+) m>|j>, with
/// N = 1/sqrt(sum |c_j|^2).
struct GeneralClassVector {
  int n = 0;
  int m = 0;
  std::vector<Complex> c;

  int dim() const { return static_cast<int>(c.size()); }
  double normalization() const;
  CVector to_vector() const;
};

/// c_j = C_j exp(2 i pi n j / d): the coefficients produced by the Weyl
/// operator U_nm acting on the seed.
GeneralClassVector weyl_family_member(const SchmidtState& s, int n, int m);

}  // namespace lunmeb::states
