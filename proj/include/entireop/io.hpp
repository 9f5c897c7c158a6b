#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "entireop/extraction.hpp"
#include "entireop/growth.hpp"
#include "entireop/operator.hpp"
#include "entireop/taylor.hpp"

namespace entireop {

// malformed or invalid input documents; the message names the offending field
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"dim": n, "trunc": N, "coeffs": [{"alpha": [..], "re": x, "im": y}, ..]}
// coeffs in graded-lex order; "im" always written, optional on input
nlohmann::json to_json(const TaylorPoly& f);
TaylorPoly taylor_from_json(const nlohmann::json& j);

// {"dim": n, "max_order": N, "terms": [{"alpha": [..], "coeff": <poly>}, ..]}
nlohmann::json to_json(const OperatorSymbol& op);
OperatorSymbol operator_from_json(const nlohmann::json& j);

// {"lower": x, "upper": y} with null upper when infinite
nlohmann::json to_json(const NormBracket& b);

// {"mode","condition","status","max_degree_checked",
//  "certificates": [{"eps","B","C","margin_by_degree"}, ..]}
nlohmann::json to_json(const ClassVerdict& v);
ClassVerdict verdict_from_json(const nlohmann::json& j);

// {"terms_used", "tail_bound": x|null,
//  "tail_params": {"eps","B","C","tau","tau_prime","ratio"}|null}
// (the result polynomial is serialized separately)
nlohmann::json to_json(const ApplyReport& r);

// tabulated monomial action {"dim": n, "entries": [{"beta": [..],
// "value": <poly>}, ..]}; declared truncation is the min over entry values,
// overridable by an optional "trunc" field
struct BlackBoxTable {
  int dim = 0;
  int declared_trunc = 0;
  std::map<MultiIndex, TaylorPoly, GrlexLess> entries;
};
BlackBoxTable black_box_from_json(const nlohmann::json& j);

// action backed by table lookup; validates up front that every exponent with
// total degree <= required_max_order is present, listing the missing ones
BlackBoxOperator make_table_operator(BlackBoxTable table, int required_max_order);

// accepts a plain number, {"re": x, "im": y}, or [x, y]
Complex complex_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);

// canonical byte form: 2-space indent, sorted keys, trailing newline
std::string dump_json(const nlohmann::json& j);

// write via temp file + rename in the destination directory
void write_json_atomic(const std::string& path, const nlohmann::json& j);

}  // namespace entireop
