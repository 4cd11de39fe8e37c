#include "lunmeb/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lunmeb/basis.hpp"
#include "lunmeb/discrimination.hpp"
#include "lunmeb/sdc.hpp"
#include "lunmeb/serialize.hpp"

namespace lunmeb::cli {

using serialize::Json;

namespace {

constexpr int kMaxDim = 16;
// Typed coefficients are usually rounded; anything this close is renormalised.
constexpr double kInputNormSlack = 1e-3;

struct Config {
  int d = 0;
  std::string schmidt;
  bool probs = false;
  int class_label = -1;
  std::uint64_t seed = 1;
  std::int64_t trials = 100000;
  int threads = 1;
  double p0 = -1.0;
  int from = 2;
  int to = 10;
  std::string format = "json";
  std::string convention = "dual";
  std::string a_choice = "paper";
  std::string output;
};

void check_dim(int d) {
  if (d < 2 || d > kMaxDim) throw std::invalid_argument("--d must lie in [2, " + std::to_string(kMaxDim) + "]");
}

states::SchmidtState read_state(const Config& cfg) {
  if (cfg.schmidt.empty()) throw std::invalid_argument("--schmidt is required");
  auto values = parse_reals(cfg.schmidt);
  const int d = cfg.d > 0 ? cfg.d : static_cast<int>(values.size());
  check_dim(d);
  if (static_cast<int>(values.size()) != d) {
    throw std::invalid_argument("--schmidt has " + std::to_string(values.size()) + " entries, expected " +
                                std::to_string(d));
  }
  if (cfg.probs) {
    for (double& p : values) {
      if (p < 0.0) throw std::invalid_argument("probabilities must be non-negative");
      p = std::sqrt(p);
    }
  }
  double norm2 = 0.0;
  for (double c : values) norm2 += c * c;
  if (std::abs(norm2 - 1.0) > kInputNormSlack) {
    throw std::invalid_argument("Schmidt weights do not sum to 1 (sum of squares " + std::to_string(norm2) + ")");
  }
  for (double& c : values) c /= std::sqrt(norm2);
  return states::make_schmidt_state(d, std::move(values));
}

Json vectors_json(const std::vector<numkit::CVector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(serialize::to_json(v));
  return a;
}

double gram_residual(const std::vector<numkit::CVector>& vs) {
  return numkit::identity_residual(numkit::gram_matrix(vs));
}

Json run_basis(const Config& cfg, bool include_vectors, bool& failed) {
  const auto seed = read_state(cfg);
  const int d = seed.dim();
  if (cfg.class_label >= d) throw std::invalid_argument("--class out of range");
  Json doc = {{"state", serialize::to_json(seed)}, {"full_rank", seed.full_rank()}};
  Json classes = Json::array();
  bool gram_ok = true;
  for (int n = 0; n < d; ++n) {
    if (cfg.class_label >= 0 && n != cfg.class_label) continue;
    const auto cls = basis::build_class(seed, n);
    const double residual = gram_residual(cls.vectors);
    gram_ok = gram_ok && residual <= 1e-10;
    Json c = {{"n", n},
              {"gram_residual", residual},
              {"direct", serialize::to_json(basis::extendability_check(cls.vectors, seed, basis::OperatorBasis::Weyl))},
              {"termwise", serialize::to_json(basis::termwise_check(seed, n))}};
    if (include_vectors) c["vectors"] = vectors_json(cls.vectors);
    classes.push_back(std::move(c));
  }
  doc["classes"] = std::move(classes);
  failed = !gram_ok;
  return doc;
}

Json run_subspace(const Config& cfg, bool& failed) {
  if (cfg.d < 3 || cfg.d > kMaxDim) throw std::invalid_argument("basis subspace needs --d in [3, 16]");
  const auto sb = basis::build_subspace_basis(cfg.d);
  const double residual = gram_residual(sb.vectors);
  const auto within = basis::extendability_check(sb.vectors, sb.seed, basis::OperatorBasis::SubspaceWeyl);
  const auto full = basis::extendability_check(sb.vectors, sb.seed, basis::OperatorBasis::Weyl);
  Json doc = {{"d", cfg.d},
              {"state", serialize::to_json(sb.seed)},
              {"count", sb.vectors.size()},
              {"gram_residual", residual},
              {"certificate_subspace_weyl", serialize::to_json(within)},
              {"certificate_full_weyl", serialize::to_json(full)},
              {"vectors", vectors_json(sb.vectors)}};
  failed = residual > 1e-10 || within.max_orthogonal_norm > 1e-9;
  return doc;
}

Json run_povm(const Config& cfg, bool check, bool& failed) {
  const auto s = read_state(cfg);
  const auto convention = discrimination::parse_convention(cfg.convention);
  const auto a_choice = discrimination::parse_a_choice(cfg.a_choice);
  const auto reps = discrimination::build_representatives(s);
  const auto duals = discrimination::build_duals(reps, convention);
  const double scale = a_choice == discrimination::AChoice::ClosedForm
                           ? discrimination::closed_form_A(s, duals.normalization)
                           : discrimination::max_feasible_A(duals);
  const auto povm = discrimination::assemble_povm(duals, scale, a_choice);
  failed = !povm.certificates.valid;

  Json doc = {{"state", serialize::to_json(s)},
              {"N", duals.normalization},
              {"max_feasible_A", discrimination::max_feasible_A(duals)}};
  if (!check) {
    doc["povm"] = serialize::to_json(povm);
    doc["duals"] = vectors_json(duals.duals);
    return doc;
  }
  doc["A"] = povm.scale;
  doc["convention"] = discrimination::to_string(convention);
  doc["a_choice"] = discrimination::to_string(a_choice);
  doc["certificates"] = serialize::to_json(povm)["certificates"];
  const auto um = discrimination::unambiguity_matrix(duals, reps);
  Json rows = Json::array();
  for (Eigen::Index l = 0; l < um.rows(); ++l) {
    Json row = Json::array();
    for (Eigen::Index m = 0; m < um.cols(); ++m) row.push_back(um(l, m));
    rows.push_back(std::move(row));
  }
  doc["unambiguity_matrix"] = std::move(rows);
  Json outcomes = Json::array();
  for (int j = 0; j < s.dim(); ++j) {
    const auto raw = discrimination::outcome_probabilities(povm, reps.vectors[j]);
    outcomes.push_back({{"state", j}, {"raw", raw}, {"probabilities", discrimination::clamp_probabilities(raw)}});
  }
  doc["outcomes"] = std::move(outcomes);
  doc["comparison"] = serialize::to_json(discrimination::compare_success(s, convention));
  return doc;
}

Json run_capacity(const Config& cfg) {
  double p0 = cfg.p0;
  int d = cfg.d;
  std::optional<states::SchmidtState> s;
  if (!cfg.schmidt.empty()) {
    s = read_state(cfg);
    d = s->dim();
    if (p0 < 0.0) p0 = s->p0();
  }
  check_dim(d);
  if (p0 < 0.0) throw std::invalid_argument("sdc capacity needs --p0 or --schmidt");
  Json doc = serialize::to_json(sdc::capacity_report(d, p0));
  if (s) doc["capacity_asymptotic"] = sdc::capacity_asymptotic(*s);
  return doc;
}

Json run_simulate(const Config& cfg) {
  const auto s = read_state(cfg);
  if (cfg.trials < 1) throw std::invalid_argument("--trials must be >= 1");
  if (cfg.threads < 1) throw std::invalid_argument("--threads must be >= 1");
  const auto r = sdc::simulate_protocol(s, cfg.trials, cfg.seed, discrimination::parse_a_choice(cfg.a_choice),
                                        cfg.threads, discrimination::parse_convention(cfg.convention));
  return serialize::to_json(r);
}

void emit(const Config& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file " + cfg.output);
  f << text;
}

std::string dump(Json doc) {
  serialize::round_significant(doc, 12);
  return doc.dump(2) + "\n";
}

}  // namespace

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed number '" + item + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size() || !std::isfinite(x)) throw std::invalid_argument("malformed number '" + item + "'");
    out.push_back(x);
  }
  if (out.empty()) throw std::invalid_argument("empty coefficient list");
  return out;
}

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Locally unextendible entangled bases: constructions, certificates and superdense coding"};
  app.require_subcommand(1);
  Config cfg;

  auto add_state = [&](CLI::App* c) {
    c->add_option("--d", cfg.d, "Local dimension d");
    c->add_option("--schmidt", cfg.schmidt, "Comma-separated Schmidt amplitudes C_k");
    c->add_flag("--probs", cfg.probs, "Read --schmidt as probabilities p_k");
  };
  auto add_output = [&](CLI::App* c) { c->add_option("-o,--output", cfg.output, "Write to file instead of stdout"); };
  auto add_povm = [&](CLI::App* c) {
    c->add_option("--convention", cfg.convention, "Dual phase convention")->check(CLI::IsMember({"dual", "literal"}));
    c->add_option("--a-choice", cfg.a_choice, "POVM scale")->check(CLI::IsMember({"paper", "max"}));
  };

  auto* basis_cmd = app.add_subcommand("basis", "Orthogonal classes and extendability certificates");
  basis_cmd->require_subcommand(1);
  auto* basis_build = basis_cmd->add_subcommand("build", "Classes with vectors, Gram residuals and certificates");
  auto* basis_check = basis_cmd->add_subcommand("check", "Gram residuals and certificates only");
  for (auto* c : {basis_build, basis_check}) {
    add_state(c);
    add_output(c);
    c->add_option("--class", cfg.class_label, "Restrict to one class n");
  }
  auto* basis_sub = basis_cmd->add_subcommand("subspace", "The (d-1)^2 subspace basis");
  basis_sub->add_option("--d", cfg.d, "Local dimension d (>= 3)")->required();
  add_output(basis_sub);

  auto* povm_cmd = app.add_subcommand("povm", "Exclusion POVM for one representative per class");
  povm_cmd->require_subcommand(1);
  auto* povm_build = povm_cmd->add_subcommand("build", "POVM elements and certificates");
  auto* povm_check = povm_cmd->add_subcommand("check", "Certificates, unambiguity matrix and comparison report");
  for (auto* c : {povm_build, povm_check}) {
    add_state(c);
    add_povm(c);
    add_output(c);
  }

  auto* sdc_cmd = app.add_subcommand("sdc", "Superdense coding");
  sdc_cmd->require_subcommand(1);
  auto* sdc_capacity = sdc_cmd->add_subcommand("capacity", "Capacity report");
  add_state(sdc_capacity);
  sdc_capacity->add_option("--p0", cfg.p0, "Smallest Schmidt probability");
  add_output(sdc_capacity);
  auto* sdc_sim = sdc_cmd->add_subcommand("simulate", "Seeded protocol simulation");
  add_state(sdc_sim);
  add_povm(sdc_sim);
  add_output(sdc_sim);
  sdc_sim->add_option("--trials", cfg.trials, "Number of trials");
  sdc_sim->add_option("--seed", cfg.seed, "64-bit seed");
  sdc_sim->add_option("--threads", cfg.threads, "Worker threads (results do not depend on this)");

  auto* fd_cmd = app.add_subcommand("fd", "Threshold curve f_d");
  fd_cmd->require_subcommand(1);
  auto* fd_curve = fd_cmd->add_subcommand("curve", "f_d for a range of dimensions");
  fd_curve->add_option("--from", cfg.from, "First dimension");
  fd_curve->add_option("--to", cfg.to, "Last dimension");
  fd_curve->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  add_output(fd_curve);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kValidationError;
  }

  try {
    bool failed = false;
    std::string failure;
    if (basis_build->parsed() || basis_check->parsed()) {
      emit(cfg, dump(run_basis(cfg, basis_build->parsed(), failed)), out);
      failure = "class Gram matrix deviates from identity";
    } else if (basis_sub->parsed()) {
      emit(cfg, dump(run_subspace(cfg, failed)), out);
      failure = "subspace basis certificate failed";
    } else if (povm_build->parsed() || povm_check->parsed()) {
      emit(cfg, dump(run_povm(cfg, povm_check->parsed(), failed)), out);
      failure = "POVM is not positive semidefinite under the chosen A";
    } else if (sdc_capacity->parsed()) {
      emit(cfg, dump(run_capacity(cfg)), out);
    } else if (sdc_sim->parsed()) {
      emit(cfg, dump(run_simulate(cfg)), out);
    } else if (fd_curve->parsed()) {
      const auto rows = sdc::fd_curve(cfg.from, cfg.to);
      emit(cfg, cfg.format == "csv" ? sdc::fd_curve_csv(rows) : dump(serialize::to_json(rows)), out);
    }
    if (failed) {
      err << "error: " << failure << "\n";
      return kCertificateFailed;
    }
  } catch (const discrimination::InvalidPovmError& e) {
    err << "error: " << e.what() << "\n";
    return kCertificateFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }
  return kOk;
}

}  // namespace lunmeb::cli
