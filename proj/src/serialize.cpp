#include "lunmeb/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace lunmeb::serialize {

using numkit::CMatrix;
using numkit::Complex;
using numkit::CVector;

void round_significant(Json& j, int digits) {
  if (j.is_number_float()) {
    const double x = j.get<double>();
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    j = std::strtod(buf, nullptr);
  } else if (j.is_array() || j.is_object()) {
    for (auto& child : j) round_significant(child, digits);
  }
}

namespace {

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex parse_complex(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex value must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json entries_json(const CMatrix& m) {
  Json e = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) e.push_back(complex_json(m(r, c)));
  }
  return e;
}

CMatrix parse_entries(const Json& e, Eigen::Index rows, Eigen::Index cols) {
  if (!e.is_array() || static_cast<Eigen::Index>(e.size()) != rows * cols) {
    throw std::invalid_argument("matrix entries have the wrong length");
  }
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = parse_complex(e[r * cols + c]);
  }
  return m;
}

const char* basis_name(operators::OperatorBasis b) {
  return b == operators::OperatorBasis::Weyl ? "weyl" : "subspace_weyl";
}

operators::OperatorBasis parse_basis(const std::string& s) {
  if (s == "weyl") return operators::OperatorBasis::Weyl;
  if (s == "subspace_weyl") return operators::OperatorBasis::SubspaceWeyl;
  throw std::invalid_argument("unknown operator basis '" + s + "'");
}

Json optional_range(const std::optional<std::pair<double, double>>& r) {
  if (!r) return nullptr;
  return Json::array({r->first, r->second});
}

std::optional<std::pair<double, double>> parse_range(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return std::make_pair(j.at(0).get<double>(), j.at(1).get<double>());
}

}  // namespace

Json to_json(const CMatrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries_json(m)}};
}

CMatrix parse_matrix(const Json& j) {
  return parse_entries(j.at("entries"), j.at("rows").get<Eigen::Index>(), j.at("cols").get<Eigen::Index>());
}

Json to_json(const CVector& v) {
  Json e = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) e.push_back(complex_json(v[i]));
  return e;
}

CVector parse_vector(const Json& j) {
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = parse_complex(j[i]);
  return v;
}

Json to_json(const states::SchmidtState& s) {
  return {{"d", s.dim()}, {"coeffs", s.coeffs()}};
}

states::SchmidtState parse_schmidt_state(const Json& j) {
  return states::make_schmidt_state(j.at("d").get<int>(), j.at("coeffs").get<std::vector<double>>());
}

Json to_json(const operators::LocalOperator& op) {
  Json j = {{"d", op.d}};
  if (const auto* w = std::get_if<operators::WeylLabel>(&op.provenance)) {
    j["label"] = {w->n, w->m};
    j["family"] = "weyl";
  } else if (const auto* s = std::get_if<operators::SubspaceWeylLabel>(&op.provenance)) {
    j["label"] = {s->n, s->m};
    j["family"] = "subspace_weyl";
  } else {
    j["label"] = "combination";
  }
  j["entries"] = entries_json(op.matrix);
  return j;
}

operators::LocalOperator parse_local_operator(const Json& j) {
  operators::LocalOperator op;
  op.d = j.at("d").get<int>();
  op.matrix = parse_entries(j.at("entries"), op.d, op.d);
  const auto& label = j.at("label");
  if (label.is_string()) {
    if (label.get<std::string>() != "combination") throw std::invalid_argument("unknown operator label");
    op.provenance = operators::Combination{};
  } else {
    const int n = label.at(0).get<int>();
    const int m = label.at(1).get<int>();
    if (j.value("family", std::string("weyl")) == "subspace_weyl") {
      op.provenance = operators::SubspaceWeylLabel{n, m};
    } else {
      op.provenance = operators::WeylLabel{n, m};
    }
  }
  return op;
}

Json to_json(const operators::OperatorCombination& f) {
  Json j = to_json(operators::combine(f));
  j["basis"] = basis_name(f.basis);
  j["coefficients"] = entries_json(f.f);
  j["normalized"] = f.normalized();
  return j;
}

operators::OperatorCombination parse_combination(const Json& j) {
  operators::OperatorCombination f;
  f.d = j.at("d").get<int>();
  f.basis = parse_basis(j.at("basis").get<std::string>());
  const int r = operators::label_range(f.basis, f.d);
  f.f = parse_entries(j.at("coefficients"), r, r);
  return f;
}

Json to_json(const basis::ExtendabilityCertificate& c) {
  return {{"nullspace_dim", c.nullspace_dim},
          {"max_orthogonal_norm", c.max_orthogonal_norm},
          {"witness", c.witness ? to_json(*c.witness) : Json(nullptr)}};
}

basis::ExtendabilityCertificate parse_certificate(const Json& j) {
  basis::ExtendabilityCertificate c;
  c.nullspace_dim = j.at("nullspace_dim").get<int>();
  c.max_orthogonal_norm = j.at("max_orthogonal_norm").get<double>();
  if (!j.at("witness").is_null()) c.witness = parse_combination(j.at("witness"));
  return c;
}

Json to_json(const basis::TermwiseVerdict& v) {
  return {{"nullspace_dim", v.nullspace_dim},
          {"fourier_hadamard_ratio", v.fourier_hadamard_ratio},
          {"determinant_trivial_only", v.determinant_trivial_only}};
}

basis::TermwiseVerdict parse_termwise_verdict(const Json& j) {
  return {j.at("nullspace_dim").get<int>(), j.at("fourier_hadamard_ratio").get<double>(),
          j.at("determinant_trivial_only").get<bool>()};
}

Json to_json(const discrimination::PovmSet& p) {
  Json elements = Json::array();
  for (const auto& e : p.elements) elements.push_back(to_json(e));
  return {{"d", p.d},
          {"A", p.scale},
          {"convention", discrimination::to_string(p.convention)},
          {"a_choice", discrimination::to_string(p.a_choice)},
          {"elements", std::move(elements)},
          {"inconclusive", to_json(p.inconclusive)},
          {"certificates",
           {{"completeness_residual", p.certificates.completeness_residual},
            {"min_eigenvalues", p.certificates.min_eigenvalues},
            {"valid", p.certificates.valid}}}};
}

discrimination::PovmSet parse_povm(const Json& j) {
  discrimination::PovmSet p;
  p.d = j.at("d").get<int>();
  p.scale = j.at("A").get<double>();
  p.convention = discrimination::parse_convention(j.at("convention").get<std::string>());
  p.a_choice = discrimination::parse_a_choice(j.at("a_choice").get<std::string>());
  for (const auto& e : j.at("elements")) p.elements.push_back(parse_matrix(e));
  p.inconclusive = parse_matrix(j.at("inconclusive"));
  const auto& c = j.at("certificates");
  p.certificates.completeness_residual = c.at("completeness_residual").get<double>();
  p.certificates.min_eigenvalues = c.at("min_eigenvalues").get<std::vector<double>>();
  p.certificates.valid = c.at("valid").get<bool>();
  return p;
}

Json to_json(const discrimination::ComparisonReport& r) {
  return {{"d", r.d},
          {"p0", r.p0},
          {"closed_form_A", r.closed_form_a},
          {"max_feasible_A", r.max_a},
          {"closed_form_A_valid", r.closed_form_a_valid},
          {"closed_form_A_min_eigenvalue_PE", r.closed_form_a_min_eigenvalue},
          {"oracle_conclusive_closed_form_A", r.oracle_conclusive_closed_form_a},
          {"oracle_conclusive_max_A", r.oracle_conclusive_max_a},
          {"formula_success", r.formula_success},
          {"difference", r.difference}};
}

discrimination::ComparisonReport parse_comparison(const Json& j) {
  discrimination::ComparisonReport r;
  r.d = j.at("d").get<int>();
  r.p0 = j.at("p0").get<double>();
  r.closed_form_a = j.at("closed_form_A").get<double>();
  r.max_a = j.at("max_feasible_A").get<double>();
  r.closed_form_a_valid = j.at("closed_form_A_valid").get<bool>();
  r.closed_form_a_min_eigenvalue = j.at("closed_form_A_min_eigenvalue_PE").get<double>();
  r.oracle_conclusive_closed_form_a = j.at("oracle_conclusive_closed_form_A").get<double>();
  r.oracle_conclusive_max_a = j.at("oracle_conclusive_max_A").get<double>();
  r.formula_success = j.at("formula_success").get<double>();
  r.difference = j.at("difference").get<double>();
  return r;
}

Json to_json(const sdc::CapacityReport& r) {
  return {{"d", r.d},
          {"p0", r.p0},
          {"capacity_nme", r.capacity_nme},
          {"capacity_nme_oracle", r.capacity_nme_oracle},
          {"capacity_nme_max_A", r.capacity_nme_max_a},
          {"closed_form_A_valid", r.closed_form_a_valid},
          {"capacity_subspace", r.capacity_subspace ? Json(*r.capacity_subspace) : Json(nullptr)},
          {"f_d", r.f_d},
          {"nme_preferred", r.nme_preferred},
          {"crossover_range", optional_range(r.crossover_range)}};
}

sdc::CapacityReport parse_capacity_report(const Json& j) {
  sdc::CapacityReport r;
  r.d = j.at("d").get<int>();
  r.p0 = j.at("p0").get<double>();
  r.capacity_nme = j.at("capacity_nme").get<double>();
  r.capacity_nme_oracle = j.at("capacity_nme_oracle").get<double>();
  r.capacity_nme_max_a = j.at("capacity_nme_max_A").get<double>();
  r.closed_form_a_valid = j.at("closed_form_A_valid").get<bool>();
  if (!j.at("capacity_subspace").is_null()) r.capacity_subspace = j.at("capacity_subspace").get<double>();
  r.f_d = j.at("f_d").get<double>();
  r.nme_preferred = j.at("nme_preferred").get<bool>();
  r.crossover_range = parse_range(j.at("crossover_range"));
  return r;
}

Json to_json(const sdc::SimulationResult& r) {
  Json msgs = Json::array();
  for (const auto& m : r.messages) {
    msgs.push_back({{"n", m.n},
                    {"m", m.m},
                    {"sent", m.sent},
                    {"m_correct", m.m_correct},
                    {"conclusive", m.conclusive},
                    {"inconclusive", m.inconclusive}});
  }
  return {{"d", r.d},
          {"trials", r.trials},
          {"seed", r.seed},
          {"a_choice", discrimination::to_string(r.a_choice)},
          {"convention", discrimination::to_string(r.convention)},
          {"messages", std::move(msgs)},
          {"empirical_conclusive_rate", r.empirical_conclusive_rate},
          {"analytic_conclusive_rate", r.analytic_conclusive_rate},
          {"stage1_exact", r.stage1_exact},
          {"mutual_information_bits", r.mutual_information_bits}};
}

sdc::SimulationResult parse_simulation_result(const Json& j) {
  sdc::SimulationResult r;
  r.d = j.at("d").get<int>();
  r.trials = j.at("trials").get<std::int64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.a_choice = discrimination::parse_a_choice(j.at("a_choice").get<std::string>());
  r.convention = discrimination::parse_convention(j.at("convention").get<std::string>());
  for (const auto& m : j.at("messages")) {
    r.messages.push_back({m.at("n").get<int>(), m.at("m").get<int>(), m.at("sent").get<std::int64_t>(),
                          m.at("m_correct").get<std::int64_t>(), m.at("conclusive").get<std::int64_t>(),
                          m.at("inconclusive").get<std::int64_t>()});
  }
  r.empirical_conclusive_rate = j.at("empirical_conclusive_rate").get<double>();
  r.analytic_conclusive_rate = j.at("analytic_conclusive_rate").get<double>();
  r.stage1_exact = j.at("stage1_exact").get<bool>();
  r.mutual_information_bits = j.at("mutual_information_bits").get<double>();
  return r;
}

Json to_json(const std::vector<sdc::FdRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) a.push_back({{"d", r.d}, {"f_d", r.f_d}});
  return a;
}

std::vector<sdc::FdRow> parse_fd_curve(const Json& j) {
  std::vector<sdc::FdRow> rows;
  for (const auto& r : j) rows.push_back({r.at("d").get<int>(), r.at("f_d").get<double>()});
  return rows;
}

}  // namespace lunmeb::serialize
