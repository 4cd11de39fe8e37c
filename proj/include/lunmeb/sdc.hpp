#pragma once

// Superdense-coding capacities for the two resources (fully non-maximally
// entangled vs maximally entangled on a (d-1)-dimensional subspace), the
// threshold curve f_d, and a seeded simulation of the two-stage decoder.
//
// All logarithms are base 2.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lunmeb/discrimination.hpp"
#include "lunmeb/states.hpp"

namespace lunmeb::sdc {

using discrimination::AChoice;
using discrimination::PhaseConvention;
using states::SchmidtState;

/// (1 + p0 d / (d-1)) log2 d; requires d >= 2 and 0 < p0 <= 1/d.
double capacity_nme(int d, double p0);

/// 2 log2(d-1); requires d >= 3.
double capacity_subspace(int d);

/// log2 d + S(rho).
double capacity_asymptotic(const SchmidtState& s);

/// ((d-1) / (d log2 d)) log2((d-1)^2 / d); requires d >= 2.
double f_threshold(int d);

/// (max(f_d, 0), 1/d) when f_d < 1/d, otherwise empty.
std::optional<std::pair<double, double>> crossover_range(int d);

struct FdRow {
  int d;
  double f_d;
};

std::vector<FdRow> fd_curve(int d_min, int d_max);

/// "d,f_d" header then one row per dimension, 12 significant digits.
std::string fd_curve_csv(const std::vector<FdRow>& rows);

struct CapacityReport {
  int d = 0;
  double p0 = 0.0;
  double capacity_nme = 0.0;  // closed-form success probability p0 d / (d-1)
  /// (1 + Born conclusive probability) log2 d under the closed-form A, and
  /// under the largest feasible A, on the state with p0 at index 0 and the
  /// remaining weight spread evenly.
  double capacity_nme_oracle = 0.0;
  double capacity_nme_max_a = 0.0;
  bool closed_form_a_valid = false;
  std::optional<double> capacity_subspace;  // d >= 3 only
  double f_d = 0.0;
  bool nme_preferred = false;
  std::optional<std::pair<double, double>> crossover_range;
};

CapacityReport capacity_report(int d, double p0);

/// SplitMix64 (Steele, Lea, Flood 2014). Small, fast, and passes BigCrush;
/// used both as the per-trial stream and to derive stream keys.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n) from one 53-bit draw; bias is below 2^-40
  /// for the n <= 256 used here.
  std::uint64_t below(std::uint64_t n) {
    const auto k = static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
    return k < n ? k : n - 1;
  }

 private:
  std::uint64_t state_;
};

/// Stream key for trial t: two SplitMix64 finalisations of (seed, t).
std::uint64_t trial_stream_key(std::uint64_t seed, std::uint64_t trial);

struct MessageCounts {
  int n = 0;
  int m = 0;
  std::int64_t sent = 0;
  std::int64_t m_correct = 0;
  std::int64_t conclusive = 0;
  std::int64_t inconclusive = 0;
};

struct SimulationResult {
  int d = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  AChoice a_choice = AChoice::ClosedForm;
  PhaseConvention convention = PhaseConvention::DualOrthogonal;
  std::vector<MessageCounts> messages;  // index n * d + m
  double empirical_conclusive_rate = 0.0;
  double analytic_conclusive_rate = 0.0;
  bool stage1_exact = false;
  /// Plug-in estimate of I(message; (m_hat, outcome)) in bits. Supplementary.
  double mutual_information_bits = 0.0;
};

/// Alice draws (n, m) uniformly and applies U_nm to her half. Bob first
/// measures the shift sector {Pi_m} (disjoint supports, so m is exact), undoes
/// the shift and runs the exclusion POVM on the remaining phase index.
/// Deterministic given the seed; the result does not depend on `threads`.
SimulationResult simulate_protocol(const SchmidtState& s, std::int64_t trials, std::uint64_t seed, AChoice a_choice,
                                   int threads = 1,
                                   PhaseConvention convention = PhaseConvention::DualOrthogonal);

}  // namespace lunmeb::sdc
