#pragma once

// Unambiguous exclusion measurement for the d non-orthogonal representatives
//
//   |psi_l> = sum_k sqrt(p_k) exp(2 i pi l k / d) |kk>,
//
// one taken from each class. Each representative gets a dual vector that is
// orthogonal to it and overlaps the others; the POVM elements are scaled
// projectors onto the duals plus an inconclusive remainder.

#include <stdexcept>
#include <string>
#include <vector>

#include "lunmeb/numkit.hpp"
#include "lunmeb/states.hpp"

namespace lunmeb::discrimination {

using numkit::CMatrix;
using numkit::CVector;
using states::SchmidtState;

/// DualOrthogonal uses ket phases exp(+2 i pi l k / d), which makes
/// <dual_l|psi_l> = 0. Literal keeps exp(-2 i pi l k / d); for odd d its
/// zero overlap lands on psi_{(d-l) mod d} instead.
enum class PhaseConvention { DualOrthogonal, Literal };

/// ClosedForm: A = p0 / (d (d-1) N^2). Max: the largest A keeping P_E >= 0.
enum class AChoice { ClosedForm, Max };

struct Representatives {
  int d;
  SchmidtState state;
  std::vector<CVector> vectors;
};

struct DualFamily {
  int d;
  SchmidtState state;
  std::vector<CVector> duals;
  double normalization;  // N
  PhaseConvention convention;
};

struct PovmCertificates {
  double completeness_residual = 0.0;
  /// Minimum eigenvalue of P_0..P_{d-1}, then P_E last.
  std::vector<double> min_eigenvalues;
  bool valid = false;
};

struct PovmSet {
  int d = 0;
  std::vector<CMatrix> elements;
  CMatrix inconclusive;
  double scale = 0.0;  // A
  PhaseConvention convention = PhaseConvention::DualOrthogonal;
  AChoice a_choice = AChoice::ClosedForm;
  PovmCertificates certificates;
};

/// Thrown when the chosen A leaves some element with a negative eigenvalue
/// below -psd_tol.
class InvalidPovmError : public std::runtime_error {
 public:
  InvalidPovmError(const std::string& what, double eigenvalue, int element)
      : std::runtime_error(what), eigenvalue_(eigenvalue), element_(element) {}
  double eigenvalue() const { return eigenvalue_; }
  /// 0..d-1 for P_l, d for P_E.
  int element() const { return element_; }

 private:
  double eigenvalue_;
  int element_;
};

/// Requires full Schmidt rank.
Representatives build_representatives(const SchmidtState& s);

DualFamily build_duals(const Representatives& r, PhaseConvention convention = PhaseConvention::DualOrthogonal);

/// p0 / (d (d-1) N^2) with p0 = min_k p_k.
double closed_form_A(const SchmidtState& s, double normalization);

/// 1 / lambda_max(sum_l |dual_l><dual_l|).
double max_feasible_A(const DualFamily& duals, const numkit::Tolerances& tol = {});

/// Builds P_l = A |dual_l><dual_l| and P_E = I - sum P_l and attaches the
/// certificates without rejecting anything.
PovmSet assemble_povm(const DualFamily& duals, double scale, AChoice tag, const numkit::Tolerances& tol = {});

/// assemble_povm with A picked by a_choice; throws InvalidPovmError when an
/// element is not positive semidefinite within psd_tol.
PovmSet build_povm(const DualFamily& duals, AChoice a_choice, const numkit::Tolerances& tol = {});

/// Born-rule probabilities <v|P_l|v> for l = 0..d-1, then <v|P_E|v>. Raw
/// values; use clamp_probabilities for reporting. Throws for non-unit v.
std::vector<double> outcome_probabilities(const PovmSet& p, const CVector& v);

/// Values within psd_tol of zero (or below) become 0.
std::vector<double> clamp_probabilities(std::vector<double> probs, const numkit::Tolerances& tol = {});

struct SuccessError {
  double success;
  double error;
};

/// success = p0 d / (d-1), error = 1 - success; requires 0 < p0 <= 1/d.
SuccessError formula_success_error(int d, double p0);

/// M[l][m] = |<dual_l|psi_m>|.
numkit::RMatrix unambiguity_matrix(const DualFamily& duals, const Representatives& reps);

/// Conclusive probability sum_l <psi|P_l|psi> on representative j.
double conclusive_probability(const PovmSet& p, const Representatives& reps, int j);

/// Side-by-side numbers for the success probability question.
struct ComparisonReport {
  int d = 0;
  double p0 = 0.0;
  double closed_form_a = 0.0;
  double max_a = 0.0;
  bool closed_form_a_valid = false;
  double closed_form_a_min_eigenvalue = 0.0;  // smallest eigenvalue of P_E under the closed-form A
  double oracle_conclusive_closed_form_a = 0.0;  // Born rule on psi_0
  double oracle_conclusive_max_a = 0.0;
  double formula_success = 0.0;
  double difference = 0.0;  // oracle (closed-form A) - formula
};

ComparisonReport compare_success(const SchmidtState& s, PhaseConvention convention = PhaseConvention::DualOrthogonal,
                                 const numkit::Tolerances& tol = {});

const char* to_string(PhaseConvention c);
const char* to_string(AChoice a);
PhaseConvention parse_convention(const std::string& s);
AChoice parse_a_choice(const std::string& s);

}  // namespace lunmeb::discrimination
