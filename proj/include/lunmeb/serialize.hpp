#pragma once

// JSON documents for every value the CLI emits, plus parsers that read them
// back. Complex numbers are [re, im] pairs; matrices are
// {"rows", "cols", "entries"} with row-major entries.

#include <json.hpp>

#include "lunmeb/basis.hpp"
#include "lunmeb/discrimination.hpp"
#include "lunmeb/operators.hpp"
#include "lunmeb/sdc.hpp"
#include "lunmeb/states.hpp"

namespace lunmeb::serialize {

using Json = nlohmann::json;

/// Rewrites every floating-point number in place to `digits` significant
/// digits.
void round_significant(Json& j, int digits = 12);

Json to_json(const numkit::CMatrix& m);
numkit::CMatrix parse_matrix(const Json& j);
Json to_json(const numkit::CVector& v);
numkit::CVector parse_vector(const Json& j);

Json to_json(const states::SchmidtState& s);
states::SchmidtState parse_schmidt_state(const Json& j);

Json to_json(const operators::LocalOperator& op);
operators::LocalOperator parse_local_operator(const Json& j);

/// Operator document of combine(f), plus "basis" and "coefficients".
Json to_json(const operators::OperatorCombination& f);
operators::OperatorCombination parse_combination(const Json& j);

Json to_json(const basis::ExtendabilityCertificate& c);
basis::ExtendabilityCertificate parse_certificate(const Json& j);

Json to_json(const basis::TermwiseVerdict& v);
basis::TermwiseVerdict parse_termwise_verdict(const Json& j);

Json to_json(const discrimination::PovmSet& p);
discrimination::PovmSet parse_povm(const Json& j);

Json to_json(const discrimination::ComparisonReport& r);
discrimination::ComparisonReport parse_comparison(const Json& j);

Json to_json(const sdc::CapacityReport& r);
sdc::CapacityReport parse_capacity_report(const Json& j);

Json to_json(const sdc::SimulationResult& r);
sdc::SimulationResult parse_simulation_result(const Json& j);

Json to_json(const std::vector<sdc::FdRow>& rows);
std::vector<sdc::FdRow> parse_fd_curve(const Json& j);

}  // namespace lunmeb::serialize
