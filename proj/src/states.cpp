#include "lunmeb/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lunmeb::states {

namespace {
constexpr double kNormSlack = 1e-6;
}

std::vector<double> SchmidtState::probabilities() const {
  std::vector<double> p(coeffs_.size());
  std::transform(coeffs_.begin(), coeffs_.end(), p.begin(), [](double c) { return c * c; });
  return p;
}

double SchmidtState::p0() const {
  const auto p = probabilities();
  return *std::min_element(p.begin(), p.end());
}

SchmidtState make_schmidt_state(int d, std::vector<double> coeffs) {
  if (d < 2) throw std::invalid_argument("Schmidt state needs d >= 2, got " + std::to_string(d));
  if (static_cast<int>(coeffs.size()) != d) {
    throw std::invalid_argument("expected " + std::to_string(d) + " Schmidt coefficients, got " +
                                std::to_string(coeffs.size()));
  }
  double norm2 = 0.0;
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw std::invalid_argument("Schmidt coefficient is not finite");
    if (c < 0.0) throw std::invalid_argument("Schmidt coefficients must be non-negative");
    norm2 += c * c;
  }
  if (std::abs(norm2 - 1.0) > kNormSlack) {
    throw std::invalid_argument("sum of squared Schmidt coefficients is " + std::to_string(norm2) +
                                ", expected 1");
  }
  const double scale = 1.0 / std::sqrt(norm2);
  bool full_rank = true;
  for (double& c : coeffs) {
    c *= scale;
    if (c == 0.0) full_rank = false;
  }
  return SchmidtState(d, std::move(coeffs), full_rank);
}

SchmidtState from_probabilities(int d, const std::vector<double>& probs) {
  std::vector<double> coeffs;
  coeffs.reserve(probs.size());
  for (double p : probs) {
    if (!(p >= 0.0)) throw std::invalid_argument("Schmidt probabilities must be non-negative");
    coeffs.push_back(std::sqrt(p));
  }
  return make_schmidt_state(d, std::move(coeffs));
}

CVector to_vector(const SchmidtState& s) {
  const int d = s.dim();
  CVector v = CVector::Zero(d * d);
  for (int k = 0; k < d; ++k) v[k * d + k] = s.coeffs()[k];
  return v;
}

SchmidtState subspace_max_entangled(int d) {
  if (d < 3) throw std::invalid_argument("subspace maximally entangled state needs d >= 3");
  std::vector<double> c(d, 1.0 / std::sqrt(static_cast<double>(d - 1)));
  c[d - 1] = 0.0;
  return make_schmidt_state(d, std::move(c));
}

SchmidtState max_entangled(int d) {
  return make_schmidt_state(d, std::vector<double>(d, 1.0 / std::sqrt(static_cast<double>(d))));
}

double entanglement_entropy(const SchmidtState& s) {
  double h = 0.0;
  for (double p : s.probabilities()) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

numkit::CMatrix reduced_density_a(const CVector& v, int d) {
  if (v.size() != static_cast<Eigen::Index>(d) * d) throw std::invalid_argument("reduced_density_a: dimension mismatch");
  // psi(i, j) = <i j|v>; rho_A = psi psi^dagger
  const numkit::CMatrix psi = Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(v.data(), d, d);
  return psi * psi.adjoint();
}

numkit::CMatrix reduced_density_b(const CVector& v, int d) {
  if (v.size() != static_cast<Eigen::Index>(d) * d) throw std::invalid_argument("reduced_density_b: dimension mismatch");
  const numkit::CMatrix psi = Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(v.data(), d, d);
  return (psi.adjoint() * psi).transpose();
}

double GeneralClassVector::normalization() const {
  double s = 0.0;
  for (const auto& x : c) s += std::norm(x);
  if (s <= 0.0) throw std::invalid_argument("general class vector has all-zero coefficients");
  return 1.0 / std::sqrt(s);
}

CVector GeneralClassVector::to_vector() const {
  const int d = dim();
  const double norm = normalization();
  CVector v = CVector::Zero(d * d);
  for (int j = 0; j < d; ++j) v[numkit::mod(j + m, d) * d + j] = norm * c[j];
  return v;
}

GeneralClassVector weyl_family_member(const SchmidtState& s, int n, int m) {
  const int d = s.dim();
  if (n < 0 || n >= d || m < 0 || m >= d) throw std::invalid_argument("weyl_family_member: label out of range");
  GeneralClassVector g{n, m, std::vector<Complex>(d)};
  for (int j = 0; j < d; ++j) g.c[j] = s.coeffs()[j] * numkit::root_of_unity(static_cast<long long>(n) * j, d);
  return g;
}

}  // namespace lunmeb::states
