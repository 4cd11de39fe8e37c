#include "lunmeb/sdc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "lunmeb/operators.hpp"

namespace lunmeb::sdc {

namespace {

void check_p0(int d, double p0) {
  if (d < 2) throw std::invalid_argument("d must be >= 2");
  if (!(p0 > 0.0 && p0 <= 1.0 / d + 1e-15)) {
    throw std::invalid_argument("p0 must lie in (0, 1/d]");
  }
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double capacity_nme(int d, double p0) {
  check_p0(d, p0);
  return (1.0 + p0 * d / (d - 1.0)) * std::log2(static_cast<double>(d));
}

double capacity_subspace(int d) {
  if (d < 3) throw std::invalid_argument("capacity_subspace needs d >= 3");
  return 2.0 * std::log2(d - 1.0);
}

double capacity_asymptotic(const SchmidtState& s) {
  return std::log2(static_cast<double>(s.dim())) + states::entanglement_entropy(s);
}

double f_threshold(int d) {
  if (d < 2) throw std::invalid_argument("f_threshold needs d >= 2");
  const double dd = d;
  return ((dd - 1.0) / (dd * std::log2(dd))) * std::log2((dd - 1.0) * (dd - 1.0) / dd);
}

std::optional<std::pair<double, double>> crossover_range(int d) {
  const double f = f_threshold(d);
  const double top = 1.0 / d;
  if (f < top) return std::make_pair(std::max(f, 0.0), top);
  return std::nullopt;
}

std::vector<FdRow> fd_curve(int d_min, int d_max) {
  if (d_min < 2 || d_max < d_min) throw std::invalid_argument("fd_curve: need 2 <= from <= to");
  std::vector<FdRow> rows;
  for (int d = d_min; d <= d_max; ++d) rows.push_back({d, f_threshold(d)});
  return rows;
}

std::string fd_curve_csv(const std::vector<FdRow>& rows) {
  std::string out = "d,f_d\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.12g\n", r.d, r.f_d);
    out += buf;
  }
  return out;
}

CapacityReport capacity_report(int d, double p0) {
  check_p0(d, p0);
  CapacityReport r;
  r.d = d;
  r.p0 = p0;
  r.capacity_nme = capacity_nme(d, p0);
  r.f_d = f_threshold(d);
  r.nme_preferred = p0 > r.f_d;
  r.crossover_range = crossover_range(d);
  if (d >= 3) r.capacity_subspace = capacity_subspace(d);

  std::vector<double> probs(d, (1.0 - p0) / (d - 1.0));
  probs[0] = p0;
  const auto cmp = discrimination::compare_success(states::from_probabilities(d, probs));
  const double logd = std::log2(static_cast<double>(d));
  r.capacity_nme_oracle = (1.0 + cmp.oracle_conclusive_closed_form_a) * logd;
  r.capacity_nme_max_a = (1.0 + cmp.oracle_conclusive_max_a) * logd;
  r.closed_form_a_valid = cmp.closed_form_a_valid;
  return r;
}

std::uint64_t trial_stream_key(std::uint64_t seed, std::uint64_t trial) {
  return mix64(mix64(seed) ^ (trial * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
}

namespace {

using numkit::CVector;

struct Tally {
  std::vector<MessageCounts> messages;
  std::vector<std::int64_t> joint;  // message x (m_hat * (d+1) + outcome)
  bool stage1_exact = true;
};

int sample(const std::vector<double>& weights, double u) {
  double total = 0.0;
  for (double w : weights) total += std::max(w, 0.0);
  double acc = 0.0;
  const double target = u * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += std::max(weights[i], 0.0);
    if (target < acc) return static_cast<int>(i);
  }
  // u * total rounding up to total: take the last positive weight.
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return static_cast<int>(i);
  }
  return 0;
}

}  // namespace

SimulationResult simulate_protocol(const SchmidtState& s, std::int64_t trials, std::uint64_t seed, AChoice a_choice,
                                   int threads, PhaseConvention convention) {
  if (trials < 1) throw std::invalid_argument("simulate_protocol: trials must be >= 1");
  if (!s.full_rank()) throw std::invalid_argument("simulate_protocol: seed must have full Schmidt rank");
  const int d = s.dim();
  const int messages = d * d;
  const int outcomes = d + 1;

  const auto reps = discrimination::build_representatives(s);
  const auto duals = discrimination::build_duals(reps, convention);
  const auto povm = discrimination::build_povm(duals, a_choice);

  const CVector phi = states::to_vector(s);
  std::vector<operators::LocalOperator> encoders;
  for (int n = 0; n < d; ++n) {
    for (int m = 0; m < d; ++m) encoders.push_back(operators::weyl(n, m, d));
  }
  std::vector<operators::LocalOperator> unshift;
  for (int m = 0; m < d; ++m) {
    auto op = operators::weyl(0, m, d);
    op.matrix = op.matrix.adjoint().eval();
    unshift.push_back(std::move(op));
  }

  auto run_range = [&](std::int64_t begin, std::int64_t end, Tally& t) {
    t.messages.assign(messages, {});
    t.joint.assign(static_cast<std::size_t>(messages) * d * outcomes, 0);
    std::vector<double> sector(d);
    for (std::int64_t trial = begin; trial < end; ++trial) {
      SplitMix64 rng(trial_stream_key(seed, static_cast<std::uint64_t>(trial)));
      const int msg = static_cast<int>(rng.below(static_cast<std::uint64_t>(messages)));
      const int m = msg % d;
      const CVector sent = operators::apply_local(encoders[msg], phi);

      // Stage 1: Pi_m' = sum_k |k+m', k><k+m', k|.
      for (int mp = 0; mp < d; ++mp) {
        double w = 0.0;
        for (int k = 0; k < d; ++k) w += std::norm(sent[numkit::mod(k + mp, d) * d + k]);
        sector[mp] = w;
      }
      const int m_hat = sample(sector, rng.uniform());
      CVector post = CVector::Zero(d * d);
      for (int k = 0; k < d; ++k) {
        const int idx = numkit::mod(k + m_hat, d) * d + k;
        post[idx] = sent[idx];
      }
      post /= post.norm();

      // Stage 2: undo the shift, then the exclusion POVM on the phase index.
      const CVector phase_state = operators::apply_local(unshift[m_hat], post);
      const auto probs = discrimination::outcome_probabilities(povm, phase_state);
      const int outcome = sample(probs, rng.uniform());

      auto& c = t.messages[msg];
      ++c.sent;
      if (m_hat == m) {
        ++c.m_correct;
      } else {
        t.stage1_exact = false;
      }
      if (outcome < d) {
        ++c.conclusive;
      } else {
        ++c.inconclusive;
      }
      ++t.joint[(static_cast<std::size_t>(msg) * d + m_hat) * outcomes + outcome];
    }
  };

  const int workers = static_cast<int>(std::clamp<std::int64_t>(threads, 1, trials));
  std::vector<Tally> tallies(workers);
  if (workers == 1) {
    run_range(0, trials, tallies[0]);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      const std::int64_t begin = trials * w / workers;
      const std::int64_t end = trials * (w + 1) / workers;
      pool.emplace_back(run_range, begin, end, std::ref(tallies[w]));
    }
    for (auto& th : pool) th.join();
  }

  SimulationResult r;
  r.d = d;
  r.trials = trials;
  r.seed = seed;
  r.a_choice = a_choice;
  r.convention = convention;
  r.messages.resize(messages);
  std::vector<std::int64_t> joint(static_cast<std::size_t>(messages) * d * outcomes, 0);
  r.stage1_exact = true;
  for (const auto& t : tallies) {
    r.stage1_exact = r.stage1_exact && t.stage1_exact;
    for (int i = 0; i < messages; ++i) {
      r.messages[i].sent += t.messages[i].sent;
      r.messages[i].m_correct += t.messages[i].m_correct;
      r.messages[i].conclusive += t.messages[i].conclusive;
      r.messages[i].inconclusive += t.messages[i].inconclusive;
    }
    for (std::size_t i = 0; i < joint.size(); ++i) joint[i] += t.joint[i];
  }
  std::int64_t conclusive = 0;
  for (int i = 0; i < messages; ++i) {
    r.messages[i].n = i / d;
    r.messages[i].m = i % d;
    conclusive += r.messages[i].conclusive;
  }
  r.empirical_conclusive_rate = static_cast<double>(conclusive) / static_cast<double>(trials);

  double analytic = 0.0;
  for (int n = 0; n < d; ++n) analytic += discrimination::conclusive_probability(povm, reps, n);
  r.analytic_conclusive_rate = analytic / d;

  // Plug-in mutual information between message and Bob's full record.
  const std::size_t ys = static_cast<std::size_t>(d) * outcomes;
  std::vector<double> py(ys, 0.0);
  const double total = static_cast<double>(trials);
  for (int x = 0; x < messages; ++x) {
    for (std::size_t y = 0; y < ys; ++y) py[y] += joint[x * ys + y] / total;
  }
  double mi = 0.0;
  for (int x = 0; x < messages; ++x) {
    const double px = r.messages[x].sent / total;
    for (std::size_t y = 0; y < ys; ++y) {
      const double pxy = joint[x * ys + y] / total;
      if (pxy > 0.0) mi += pxy * std::log2(pxy / (px * py[y]));
    }
  }
  r.mutual_information_bits = mi;
  return r;
}

}  // namespace lunmeb::sdc
