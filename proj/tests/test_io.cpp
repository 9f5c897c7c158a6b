#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "entireop/builtin.hpp"
#include "entireop/growth.hpp"
#include "entireop/io.hpp"
#include "entireop/operator.hpp"
#include "entireop/taylor.hpp"

using namespace entireop;
using nlohmann::json;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "entireop_io_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("polynomial serialization round trip") {
  TaylorPoly f(2, 6);
  f.set_coeff(MultiIndex({1, 0}), Complex(0.5, -2.0));
  f.set_coeff(MultiIndex({0, 3}), Complex(-1e-5, 0.0));
  f.set_coeff(MultiIndex({2, 2}), Complex(0.0, 7.25));

  const json doc = to_json(f);
  const TaylorPoly back = taylor_from_json(doc);
  CHECK(back.dim() == 2);
  CHECK(back.trunc() == 6);
  CHECK(back.coeffs() == f.coeffs());

  // "im" may be omitted on input
  const json terse = {{"dim", 1},
                      {"trunc", 3},
                      {"coeffs", json::array({{{"alpha", {2}}, {"re", 4.0}}})}};
  CHECK(taylor_from_json(terse).coeff(MultiIndex({2})) == Complex(4.0, 0.0));

  // repeated indices accumulate
  const json doubled = {{"dim", 1},
                        {"trunc", 3},
                        {"coeffs", json::array({{{"alpha", {1}}, {"re", 1.0}},
                                                {{"alpha", {1}}, {"re", 2.0}}})}};
  CHECK(taylor_from_json(doubled).coeff(MultiIndex({1})) == Complex(3.0, 0.0));
}

TEST_CASE("polynomial parsing rejects malformed documents") {
  const json no_dim = {{"trunc", 3}, {"coeffs", json::array()}};
  CHECK_THROWS_WITH_AS(taylor_from_json(no_dim), doctest::Contains("dim"), ParseError);

  const json over = {{"dim", 1},
                     {"trunc", 2},
                     {"coeffs", json::array({{{"alpha", {3}}, {"re", 1.0}}})}};
  CHECK_THROWS_AS(taylor_from_json(over), ParseError);

  const json bad_coeffs = {{"dim", 1}, {"trunc", 2}, {"coeffs", 7}};
  CHECK_THROWS_AS(taylor_from_json(bad_coeffs), ParseError);

  const json negative = {{"dim", 1},
                         {"trunc", 2},
                         {"coeffs", json::array({{{"alpha", {-1}}, {"re", 1.0}}})}};
  CHECK_THROWS(taylor_from_json(negative));
}

TEST_CASE("operator serialization round trip merges duplicates") {
  std::vector<Complex> shift{{0.5, 0.5}};
  const OperatorSymbol op = translation_symbol(shift, 6, 12);
  const OperatorSymbol back = operator_from_json(to_json(op));
  CHECK(back.dim() == 1);
  CHECK(back.max_order() == 6);
  CHECK(max_symbol_diff(op, back) == 0.0);

  const json dup = {
      {"dim", 1},
      {"max_order", 2},
      {"terms",
       json::array({{{"alpha", {1}},
                     {"coeff",
                      {{"dim", 1},
                       {"trunc", 2},
                       {"coeffs", json::array({{{"alpha", {0}}, {"re", 1.0}}})}}}},
                    {{"alpha", {1}},
                     {"coeff",
                      {{"dim", 1},
                       {"trunc", 2},
                       {"coeffs", json::array({{{"alpha", {0}}, {"re", 2.0}}})}}}}})}};
  const OperatorSymbol merged = operator_from_json(dup);
  REQUIRE(merged.term(MultiIndex({1})) != nullptr);
  CHECK(merged.term(MultiIndex({1}))->coeff(MultiIndex({0})) == Complex(3.0, 0.0));

  const json missing = {{"dim", 1}, {"terms", json::array()}};
  CHECK_THROWS_WITH_AS(operator_from_json(missing), doctest::Contains("max_order"), ParseError);
}

TEST_CASE("norm bracket serialization handles overflow") {
  const json finite = to_json(NormBracket{1.25, 2.5});
  CHECK(finite["lower"] == 1.25);
  CHECK(finite["upper"] == 2.5);

  const json infinite = to_json(NormBracket{1.0, std::numeric_limits<double>::infinity()});
  CHECK(infinite["upper"].is_null());
}

TEST_CASE("verdict serialization round trip") {
  std::vector<Complex> one{{1.0, 0.0}};
  const OperatorSymbol tr = translation_symbol(one, 8, 16);
  const ClassVerdict v = check_condition(tr, 1.0, ClassMode::normal, Condition::III,
                                         {1.0, 0.5}, default_scale_grid());
  const json doc = to_json(v);
  const ClassVerdict back = verdict_from_json(doc);
  CHECK(back.mode == v.mode);
  CHECK(back.condition == v.condition);
  CHECK(back.status == v.status);
  CHECK(back.max_degree_checked == v.max_degree_checked);
  REQUIRE(back.certificates.size() == v.certificates.size());
  for (size_t i = 0; i < v.certificates.size(); ++i) {
    CHECK(back.certificates[i].eps == v.certificates[i].eps);
    CHECK(back.certificates[i].scale == v.certificates[i].scale);
    CHECK(back.certificates[i].constant == v.certificates[i].constant);
    CHECK(back.certificates[i].margin_by_degree == v.certificates[i].margin_by_degree);
  }

  json broken = doc;
  broken["certificates"][0]["eps"] = -1.0;
  CHECK_THROWS_AS(verdict_from_json(broken), ParseError);
}

TEST_CASE("apply report serialization") {
  std::vector<Complex> one{{1.0, 0.0}};
  const OperatorSymbol op = translation_symbol(one, 16, 32);
  const TaylorPoly f = monomial(1, MultiIndex({2}), 1.0, 10);

  const ApplyReport plain = apply(op, f, GrowthParams(1.0, 1.0));
  const json jp = to_json(plain);
  CHECK(jp["tail_bound"].is_null());
  CHECK(jp["tail_params"].is_null());
  CHECK(jp["terms_used"] == 3);

  const ClassVerdict cert = classify(op, 1.0, ClassMode::normal);
  REQUIRE(cert.status == VerdictStatus::pass);
  const ApplyReport certified = apply(op, f, GrowthParams(1.0, 1.0), &cert);
  const json jc = to_json(certified);
  CHECK(jc["tail_bound"].get<double>() == *certified.tail_bound);
  CHECK(jc["tail_params"]["eps"].get<double>() == certified.tail_params->eps);
  CHECK(jc["tail_params"]["B"].get<double>() == certified.tail_params->scale);
  CHECK(jc["tail_params"]["C"].get<double>() == certified.tail_params->constant);
  CHECK(jc["tail_params"]["tau"].get<double>() == 1.0);
  CHECK(jc["tail_params"]["tau_prime"].get<double>() == certified.tail_params->type_out);
  CHECK(jc["tail_params"]["ratio"].get<double>() == certified.tail_params->ratio);
}

TEST_CASE("black box tables: declared truncation, completeness, lookup") {
  json table = {{"dim", 1}, {"entries", json::array()}};
  for (int b = 0; b <= 4; ++b) {
    TaylorPoly image(1, b == 2 ? 9 : 12);
    image.set_coeff(MultiIndex({b}), static_cast<double>(b + 1));
    table["entries"].push_back({{"beta", {b}}, {"value", to_json(image)}});
  }

  const BlackBoxTable parsed = black_box_from_json(table);
  CHECK(parsed.dim == 1);
  CHECK(parsed.declared_trunc == 9);

  json overridden = table;
  overridden["trunc"] = 5;
  CHECK(black_box_from_json(overridden).declared_trunc == 5);

  const BlackBoxOperator box = make_table_operator(parsed, 4);
  CHECK(box.declared_trunc == 9);
  CHECK(box.action(MultiIndex({3})).coeff(MultiIndex({3})) == Complex(4.0, 0.0));

  CHECK_THROWS_WITH_AS(make_table_operator(parsed, 6), doctest::Contains("[5]"), ParseError);

  json dup = table;
  dup["entries"].push_back(table["entries"][0]);
  CHECK_THROWS_AS(black_box_from_json(dup), ParseError);
}

TEST_CASE("complex literals in documents") {
  CHECK(complex_from_json(json(3.0)) == Complex(3.0, 0.0));
  CHECK(complex_from_json(json::array({1.0, 2.0})) == Complex(1.0, 2.0));
  CHECK(complex_from_json(json{{"re", -1.0}, {"im", 0.5}}) == Complex(-1.0, 0.5));
  CHECK_THROWS_AS(complex_from_json(json("nope")), ParseError);
  CHECK_THROWS_AS(complex_from_json(json::array({1.0})), ParseError);
}

TEST_CASE("canonical dump: sorted keys, two-space indent, trailing newline") {
  const json doc = {{"zeta", 1}, {"alpha", {{"b", 2}, {"a", 1}}}};
  const std::string text = dump_json(doc);
  CHECK(text.back() == '\n');
  CHECK(text.find("\"alpha\"") < text.find("\"zeta\""));
  CHECK(text.find("\"a\"") < text.find("\"b\""));
  CHECK(dump_json(doc) == text);

  // shortest round-trip float text survives reparsing bit-exactly
  const json num = {{"x", 0.1}, {"y", 1.0 / 3.0}};
  const json reparsed = json::parse(dump_json(num));
  CHECK(reparsed["x"].get<double>() == 0.1);
  CHECK(reparsed["y"].get<double>() == 1.0 / 3.0);
}

TEST_CASE("atomic writes and file reads") {
  const auto path = temp_file("roundtrip.json");
  const json doc = {{"k", 1.5}, {"s", "v"}};
  write_json_atomic(path.string(), doc);
  CHECK(std::filesystem::exists(path));
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));

  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text == dump_json(doc));

  CHECK(read_json_file(path.string()) == doc);
  CHECK_THROWS_AS(read_json_file((temp_file("absent.json")).string()), ParseError);
}
