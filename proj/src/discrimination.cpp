#include "lunmeb/discrimination.hpp"

#include <algorithm>
#include <cmath>

namespace lunmeb::discrimination {

using numkit::Complex;

Representatives build_representatives(const SchmidtState& s) {
  if (!s.full_rank()) throw std::invalid_argument("representatives need a seed with full Schmidt rank");
  const int d = s.dim();
  Representatives r{d, s, {}};
  for (int l = 0; l < d; ++l) {
    CVector v = CVector::Zero(d * d);
    for (int k = 0; k < d; ++k) v[k * d + k] = s.coeffs()[k] * numkit::root_of_unity(static_cast<long long>(l) * k, d);
    r.vectors.push_back(std::move(v));
  }
  return r;
}

DualFamily build_duals(const Representatives& r, PhaseConvention convention) {
  const int d = r.d;
  const auto p = r.state.probabilities();
  double inv = (d - 1.0) * (d - 1.0) / p[0];
  for (int k = 1; k < d; ++k) {
    if (p[k] <= 0.0) throw std::invalid_argument("duals need every Schmidt probability > 0");
    inv += 1.0 / p[k];
  }
  if (!(p[0] > 0.0)) throw std::invalid_argument("duals need every Schmidt probability > 0");
  const double norm = 1.0 / std::sqrt(inv);
  const long long sign = convention == PhaseConvention::DualOrthogonal ? 1 : -1;

  DualFamily out{d, r.state, {}, norm, convention};
  for (int l = 0; l < d; ++l) {
    CVector v = CVector::Zero(d * d);
    v[0] = -norm * (d - 1.0) / std::sqrt(p[0]);
    for (int k = 1; k < d; ++k) {
      v[k * d + k] = norm / std::sqrt(p[k]) * numkit::root_of_unity(sign * l * k, d);
    }
    out.duals.push_back(std::move(v));
  }
  return out;
}

double closed_form_A(const SchmidtState& s, double normalization) {
  const int d = s.dim();
  return s.p0() / (d * (d - 1.0) * normalization * normalization);
}

namespace {

CMatrix dual_sum(const DualFamily& duals) {
  const auto n = static_cast<Eigen::Index>(duals.d) * duals.d;
  CMatrix s = CMatrix::Zero(n, n);
  for (const auto& v : duals.duals) s += v * v.adjoint();
  return s;
}

}  // namespace

double max_feasible_A(const DualFamily& duals, const numkit::Tolerances& tol) {
  const auto ev = numkit::hermitian_eigenvalues(dual_sum(duals), tol);
  return 1.0 / ev.back();
}

PovmSet assemble_povm(const DualFamily& duals, double scale, AChoice tag, const numkit::Tolerances& tol) {
  const int d = duals.d;
  const auto dim = static_cast<Eigen::Index>(d) * d;
  PovmSet out;
  out.d = d;
  out.scale = scale;
  out.convention = duals.convention;
  out.a_choice = tag;
  CMatrix total = CMatrix::Zero(dim, dim);
  for (const auto& v : duals.duals) {
    out.elements.push_back(scale * (v * v.adjoint()));
    total += out.elements.back();
  }
  out.inconclusive = CMatrix::Identity(dim, dim) - total;

  auto& cert = out.certificates;
  cert.completeness_residual = (total + out.inconclusive - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  for (const auto& e : out.elements) cert.min_eigenvalues.push_back(numkit::hermitian_eigenvalues(e, tol).front());
  cert.min_eigenvalues.push_back(numkit::hermitian_eigenvalues(out.inconclusive, tol).front());
  cert.valid = std::all_of(cert.min_eigenvalues.begin(), cert.min_eigenvalues.end(),
                           [&](double x) { return x >= -tol.psd_tol; });
  return out;
}

PovmSet build_povm(const DualFamily& duals, AChoice a_choice, const numkit::Tolerances& tol) {
  const double scale =
      a_choice == AChoice::ClosedForm ? closed_form_A(duals.state, duals.normalization) : max_feasible_A(duals, tol);
  PovmSet out = assemble_povm(duals, scale, a_choice, tol);
  if (!out.certificates.valid) {
    const auto& ev = out.certificates.min_eigenvalues;
    const auto worst = std::min_element(ev.begin(), ev.end());
    const int index = static_cast<int>(worst - ev.begin());
    throw InvalidPovmError("POVM element " + (index == duals.d ? std::string("P_E") : "P_" + std::to_string(index)) +
                               " is not positive semidefinite (min eigenvalue " + std::to_string(*worst) + ")",
                           *worst, index);
  }
  return out;
}

std::vector<double> outcome_probabilities(const PovmSet& p, const CVector& v) {
  if (v.size() != p.inconclusive.rows()) throw std::invalid_argument("outcome_probabilities: dimension mismatch");
  if (std::abs(v.norm() - 1.0) > 1e-10) throw std::invalid_argument("outcome_probabilities: state is not normalised");
  std::vector<double> probs;
  probs.reserve(p.elements.size() + 1);
  for (const auto& e : p.elements) probs.push_back(v.dot(e * v).real());
  probs.push_back(v.dot(p.inconclusive * v).real());
  return probs;
}

std::vector<double> clamp_probabilities(std::vector<double> probs, const numkit::Tolerances& tol) {
  for (double& x : probs) {
    if (x < tol.psd_tol) x = 0.0;
  }
  return probs;
}

SuccessError formula_success_error(int d, double p0) {
  if (d < 2) throw std::invalid_argument("formula_success_error: d must be >= 2");
  if (!(p0 > 0.0 && p0 <= 1.0 / d + 1e-15)) throw std::invalid_argument("formula_success_error: p0 must lie in (0, 1/d]");
  const double success = p0 * d / (d - 1.0);
  return {success, 1.0 - success};
}

numkit::RMatrix unambiguity_matrix(const DualFamily& duals, const Representatives& reps) {
  const int d = duals.d;
  numkit::RMatrix m(d, d);
  for (int l = 0; l < d; ++l) {
    for (int j = 0; j < d; ++j) m(l, j) = std::abs(duals.duals[l].dot(reps.vectors[j]));
  }
  return m;
}

double conclusive_probability(const PovmSet& p, const Representatives& reps, int j) {
  const auto probs = outcome_probabilities(p, reps.vectors.at(j));
  double s = 0.0;
  for (std::size_t l = 0; l + 1 < probs.size(); ++l) s += probs[l];
  return s;
}

ComparisonReport compare_success(const SchmidtState& s, PhaseConvention convention, const numkit::Tolerances& tol) {
  const auto reps = build_representatives(s);
  const auto duals = build_duals(reps, convention);
  ComparisonReport r;
  r.d = s.dim();
  r.p0 = s.p0();
  r.closed_form_a = closed_form_A(s, duals.normalization);
  r.max_a = max_feasible_A(duals, tol);

  const auto closed_form_set = assemble_povm(duals, r.closed_form_a, AChoice::ClosedForm, tol);
  r.closed_form_a_valid = closed_form_set.certificates.valid;
  r.closed_form_a_min_eigenvalue = closed_form_set.certificates.min_eigenvalues.back();
  r.oracle_conclusive_closed_form_a = conclusive_probability(closed_form_set, reps, 0);
  r.oracle_conclusive_max_a = conclusive_probability(assemble_povm(duals, r.max_a, AChoice::Max, tol), reps, 0);
  r.formula_success = r.d * r.p0 / (r.d - 1.0);
  r.difference = r.oracle_conclusive_closed_form_a - r.formula_success;
  return r;
}

const char* to_string(PhaseConvention c) {
  return c == PhaseConvention::DualOrthogonal ? "dual" : "literal";
}

const char* to_string(AChoice a) {
  return a == AChoice::ClosedForm ? "paper" : "max";
}

PhaseConvention parse_convention(const std::string& s) {
  if (s == "dual" || s == "dual-orthogonal") return PhaseConvention::DualOrthogonal;
  if (s == "literal") return PhaseConvention::Literal;
  throw std::invalid_argument("unknown phase convention '" + s + "'");
}

AChoice parse_a_choice(const std::string& s) {
  if (s == "paper" || s == "closed-form") return AChoice::ClosedForm;
  if (s == "max") return AChoice::Max;
  throw std::invalid_argument("unknown A choice '" + s + "'");
}

}  // namespace lunmeb::discrimination
