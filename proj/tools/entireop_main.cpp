#include <cctype>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entireop/builtin.hpp"
#include "entireop/extraction.hpp"
#include "entireop/growth.hpp"
#include "entireop/io.hpp"
#include "entireop/operator.hpp"

namespace {

using entireop::Complex;
using nlohmann::json;

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  json cfg = entireop::read_json_file(path);
  if (!cfg.is_object()) throw entireop::ParseError("config file must hold a JSON object");
  return cfg;
}

// fill an option from the config document when it was not given on the
// command line
void merge_number(const CLI::Option* opt, const json& cfg, const char* key, double& target) {
  if (opt->count() > 0 || !cfg.contains(key)) return;
  if (!cfg.at(key).is_number())
    throw entireop::ParseError(std::string("config field \"") + key + "\" must be a number");
  target = cfg.at(key).get<double>();
}

void merge_int(const CLI::Option* opt, const json& cfg, const char* key, int& target) {
  if (opt->count() > 0 || !cfg.contains(key)) return;
  if (!cfg.at(key).is_number_integer())
    throw entireop::ParseError(std::string("config field \"") + key + "\" must be an integer");
  target = cfg.at(key).get<int>();
}

void merge_string(const CLI::Option* opt, const json& cfg, const char* key,
                  std::string& target) {
  if (opt->count() > 0 || !cfg.contains(key)) return;
  if (!cfg.at(key).is_string())
    throw entireop::ParseError(std::string("config field \"") + key + "\" must be a string");
  target = cfg.at(key).get<std::string>();
}

std::vector<double> parse_grid_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::string token;
  std::istringstream ss(text);
  while (std::getline(ss, token, ',')) {
    try {
      size_t used = 0;
      const double v = std::stod(token, &used);
      while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used])))
        ++used;
      if (used != token.size()) throw std::invalid_argument("trailing characters");
      out.push_back(v);
    } catch (const std::exception&) {
      throw entireop::ParseError(std::string(what) + " entries must be comma-separated numbers");
    }
    if (!(out.back() > 0.0))
      throw entireop::ParseError(std::string(what) + " entries must be positive");
  }
  if (out.empty()) throw entireop::ParseError(std::string(what) + " must be nonempty");
  return out;
}

std::vector<double> grid_from_config(const CLI::Option* opt, const json& cfg, const char* key,
                                     const std::string& text,
                                     const std::vector<double>& fallback) {
  if (opt->count() > 0) return parse_grid_list(text, key);
  if (cfg.contains(key)) {
    const json& v = cfg.at(key);
    if (v.is_string()) return parse_grid_list(v.get<std::string>(), key);
    if (v.is_array()) {
      std::vector<double> out;
      for (const json& e : v) {
        if (!e.is_number() || !(e.get<double>() > 0.0))
          throw entireop::ParseError(std::string("config field \"") + key +
                                     "\" must hold positive numbers");
        out.push_back(e.get<double>());
      }
      if (out.empty())
        throw entireop::ParseError(std::string("config field \"") + key + "\" must be nonempty");
      return out;
    }
    throw entireop::ParseError(std::string("config field \"") + key +
                               "\" must be a string or array");
  }
  return fallback;
}

// "RxA@rmax", e.g. "5x5@2.0"
void parse_polar_spec(const std::string& text, int& radii, int& angles, double& r_max) {
  const auto xpos = text.find('x');
  const auto apos = text.find('@');
  if (xpos == std::string::npos || apos == std::string::npos || apos < xpos)
    throw entireop::ParseError("grid spec must look like \"5x5@2.0\"");
  try {
    size_t used = 0;
    radii = std::stoi(text.substr(0, xpos), &used);
    if (used != xpos) throw std::invalid_argument("radii");
    const std::string mid = text.substr(xpos + 1, apos - xpos - 1);
    angles = std::stoi(mid, &used);
    if (used != mid.size()) throw std::invalid_argument("angles");
    const std::string tail = text.substr(apos + 1);
    r_max = std::stod(tail, &used);
    if (used != tail.size()) throw std::invalid_argument("radius");
  } catch (const std::exception&) {
    throw entireop::ParseError("grid spec must look like \"5x5@2.0\"");
  }
  if (radii <= 0 || angles <= 0 || !(r_max > 0.0))
    throw entireop::ParseError("grid spec values must be positive");
}

entireop::OperatorSymbol build_builtin(const json& spec) {
  const json& name_field = spec.contains("builtin") ? spec.at("builtin") : json();
  if (!name_field.is_string())
    throw entireop::ParseError("missing field \"builtin\" in builtin operator spec");
  const std::string name = name_field.get<std::string>();
  auto int_or = [&](const char* key, int fallback) {
    if (!spec.contains(key)) return fallback;
    if (!spec.at(key).is_number_integer())
      throw entireop::ParseError(std::string("field \"") + key +
                                 "\" in builtin operator spec must be an integer");
    return spec.at(key).get<int>();
  };
  if (name == "translation") {
    if (!spec.contains("a"))
      throw entireop::ParseError("missing field \"a\" in translation spec");
    if (!spec.at("a").is_array())
      throw entireop::ParseError("field \"a\" in translation spec must be an array");
    std::vector<Complex> shift;
    for (const json& e : spec.at("a")) shift.push_back(entireop::complex_from_json(e));
    if (shift.empty())
      throw entireop::ParseError("field \"a\" in translation spec must be nonempty");
    return entireop::translation_symbol(shift, int_or("max_order", 16),
                                        int_or("coeff_trunc", 32));
  }
  if (name == "dilation") {
    if (!spec.contains("sigma"))
      throw entireop::ParseError("missing field \"sigma\" in dilation spec");
    const Complex sigma = entireop::complex_from_json(spec.at("sigma"));
    const int max_order = int_or("max_order", 12);
    return entireop::dilation_symbol(sigma, int_or("dim", 1), max_order,
                                     int_or("coeff_trunc", std::max(24, max_order)));
  }
  if (name == "schrodinger") {
    if (!spec.contains("t") || !spec.at("t").is_number())
      throw entireop::ParseError("missing field \"t\" in schrodinger spec");
    return entireop::schrodinger_propagator(spec.at("t").get<double>(), int_or("max_order", 24),
                                            int_or("coeff_trunc", 60));
  }
  throw entireop::ParseError("unknown builtin operator \"" + name + "\"");
}

// an operator argument is a literal builtin name (optionally parameterized by
// --params inline JSON), a file holding builtin parameters, or a file holding a
// full symbol
entireop::OperatorSymbol load_operator(const std::string& arg, const std::string& params) {
  const bool is_builtin_name =
      arg == "translation" || arg == "dilation" || arg == "schrodinger";
  if (is_builtin_name) {
    json spec = json::object();
    if (!params.empty()) {
      try {
        spec = json::parse(params);
      } catch (const json::parse_error& e) {
        throw entireop::ParseError(std::string("invalid JSON in --params: ") + e.what());
      }
      if (!spec.is_object())
        throw entireop::ParseError("--params must hold a JSON object");
    }
    spec["builtin"] = arg;
    return build_builtin(spec);
  }
  const json j = entireop::read_json_file(arg);
  if (j.is_object() && j.contains("builtin")) return build_builtin(j);
  return entireop::operator_from_json(j);
}

void emit(const json& doc, const std::string& out_path) {
  std::cout << entireop::dump_json(doc);
  if (!out_path.empty()) entireop::write_json_atomic(out_path, doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operator calculus for entire functions of finite exponential order"};
  app.require_subcommand(1);
  int rc = 0;

  // apply
  auto* ap = app.add_subcommand("apply", "apply an operator symbol to a function");
  std::string ap_op, ap_fn, ap_cert, ap_out, ap_report, ap_params, ap_config;
  double ap_p = 1.0, ap_tau = 1.0;
  ap->add_option("operator", ap_op, "operator file, builtin parameter file, or builtin name")
      ->required();
  ap->add_option("function", ap_fn, "input TaylorPoly file")->required();
  auto* ap_p_opt = ap->add_option("--p", ap_p, "growth order");
  auto* ap_tau_opt = ap->add_option("--tau", ap_tau, "growth type");
  ap->add_option("--certificate", ap_cert, "pass verdict JSON enabling the tail bound");
  ap->add_option("-o,--out", ap_out, "write the result polynomial here");
  ap->add_option("--report", ap_report, "write the apply report here");
  ap->add_option("--params", ap_params, "inline JSON parameters for a builtin name");
  ap->add_option("--config", ap_config, "JSON config merged under explicit flags");
  ap->callback([&] {
    const json cfg = load_config(ap_config);
    merge_number(ap_p_opt, cfg, "p", ap_p);
    merge_number(ap_tau_opt, cfg, "tau", ap_tau);
    const entireop::OperatorSymbol op = load_operator(ap_op, ap_params);
    const entireop::TaylorPoly fn = entireop::taylor_from_json(entireop::read_json_file(ap_fn));
    const entireop::GrowthParams params(ap_p, ap_tau);
    std::optional<entireop::ClassVerdict> cert;
    if (!ap_cert.empty())
      cert = entireop::verdict_from_json(entireop::read_json_file(ap_cert));
    const entireop::ApplyReport report =
        entireop::apply(op, fn, params, cert ? &*cert : nullptr);
    const json result_doc = entireop::to_json(report.result);
    const json report_doc = entireop::to_json(report);
    std::cout << entireop::dump_json(json{{"report", report_doc}, {"result", result_doc}});
    if (!ap_out.empty()) entireop::write_json_atomic(ap_out, result_doc);
    if (!ap_report.empty()) entireop::write_json_atomic(ap_report, report_doc);
  });

  // extract
  auto* ex = app.add_subcommand("extract", "recover a symbol from tabulated monomial images");
  std::string ex_box, ex_out, ex_config;
  int ex_max_order = 0, ex_coeff_trunc = -1;
  ex->add_option("blackbox", ex_box, "black box table file")->required();
  auto* ex_mo = ex->add_option("--max-order", ex_max_order, "largest |alpha| to extract")
                    ->required();
  auto* ex_ct = ex->add_option("--coeff-trunc", ex_coeff_trunc,
                               "coefficient truncation (default: table truncation)");
  ex->add_option("-o,--out", ex_out, "write the extracted operator here");
  ex->add_option("--config", ex_config, "JSON config merged under explicit flags");
  ex->callback([&] {
    const json cfg = load_config(ex_config);
    merge_int(ex_mo, cfg, "max-order", ex_max_order);
    merge_int(ex_ct, cfg, "coeff-trunc", ex_coeff_trunc);
    entireop::BlackBoxTable table =
        entireop::black_box_from_json(entireop::read_json_file(ex_box));
    const entireop::BlackBoxOperator box =
        entireop::make_table_operator(std::move(table), ex_max_order);
    const entireop::OperatorSymbol sym =
        entireop::extract_symbol(box, ex_max_order, ex_coeff_trunc);
    emit(entireop::to_json(sym), ex_out);
  });

  // classify
  auto* cl = app.add_subcommand("classify", "check a decay condition for a symbol");
  std::string cl_op, cl_mode = "normal", cl_condition = "IV", cl_eps, cl_b, cl_out, cl_params,
              cl_config;
  double cl_p = 1.0;
  cl->add_option("operator", cl_op, "operator file, builtin parameter file, or builtin name")
      ->required();
  auto* cl_p_opt = cl->add_option("--p", cl_p, "growth order");
  auto* cl_mode_opt =
      cl->add_option("--mode", cl_mode, "normal or minimal")->check(CLI::IsMember({"normal", "minimal"}));
  auto* cl_cond_opt = cl->add_option("--condition", cl_condition, "I, II, III, or IV")
                          ->check(CLI::IsMember({"I", "II", "III", "IV"}));
  auto* cl_eps_opt = cl->add_option("--eps-grid", cl_eps, "comma-separated eps grid");
  auto* cl_b_opt = cl->add_option("--b-grid", cl_b, "comma-separated scale grid");
  cl->add_option("-o,--out", cl_out, "write the verdict here");
  cl->add_option("--params", cl_params, "inline JSON parameters for a builtin name");
  cl->add_option("--config", cl_config, "JSON config merged under explicit flags");
  cl->callback([&] {
    const json cfg = load_config(cl_config);
    merge_number(cl_p_opt, cfg, "p", cl_p);
    merge_string(cl_mode_opt, cfg, "mode", cl_mode);
    merge_string(cl_cond_opt, cfg, "condition", cl_condition);
    const std::vector<double> eps_grid =
        grid_from_config(cl_eps_opt, cfg, "eps-grid", cl_eps, entireop::default_eps_grid());
    const std::vector<double> b_grid =
        grid_from_config(cl_b_opt, cfg, "b-grid", cl_b, entireop::default_scale_grid());
    const entireop::OperatorSymbol op = load_operator(cl_op, cl_params);
    const entireop::ClassMode mode =
        cl_mode == "normal" ? entireop::ClassMode::normal : entireop::ClassMode::minimal;
    entireop::Condition cond = entireop::Condition::IV;
    if (cl_condition == "I") cond = entireop::Condition::I;
    if (cl_condition == "II") cond = entireop::Condition::II;
    if (cl_condition == "III") cond = entireop::Condition::III;
    const entireop::ClassVerdict verdict =
        entireop::check_condition(op, cl_p, mode, cond, eps_grid, b_grid);
    emit(entireop::to_json(verdict), cl_out);
    switch (verdict.status) {
      case entireop::VerdictStatus::pass:
        rc = 0;
        break;
      case entireop::VerdictStatus::fail:
        rc = 1;
        break;
      case entireop::VerdictStatus::inconclusive:
        rc = 4;
        break;
    }
  });

  // norm
  auto* nm = app.add_subcommand("norm", "two-sided growth norm bracket of a function");
  std::string nm_fn, nm_out, nm_config;
  double nm_p = 1.0, nm_tau = 1.0;
  nm->add_option("function", nm_fn, "input TaylorPoly file")->required();
  auto* nm_p_opt = nm->add_option("--p", nm_p, "growth order");
  auto* nm_tau_opt = nm->add_option("--tau", nm_tau, "growth type");
  nm->add_option("-o,--out", nm_out, "write the bracket here");
  nm->add_option("--config", nm_config, "JSON config merged under explicit flags");
  nm->callback([&] {
    const json cfg = load_config(nm_config);
    merge_number(nm_p_opt, cfg, "p", nm_p);
    merge_number(nm_tau_opt, cfg, "tau", nm_tau);
    const entireop::TaylorPoly fn = entireop::taylor_from_json(entireop::read_json_file(nm_fn));
    const entireop::NormBracket bracket =
        entireop::norm_bracket(fn, entireop::GrowthParams(nm_p, nm_tau));
    emit(entireop::to_json(bracket), nm_out);
  });

  // schrodinger
  auto* sc = app.add_subcommand("schrodinger",
                                "compare the factored propagator against the series reference");
  std::string sc_phi, sc_grid = "5x5@2.0", sc_out, sc_config;
  double sc_t = 0.0, sc_tol = 1e-6;
  int sc_series = 40;
  auto* sc_t_opt = sc->add_option("--t", sc_t, "time")->required();
  sc->add_option("--phi", sc_phi, "initial state TaylorPoly file")->required();
  auto* sc_grid_opt = sc->add_option("--grid", sc_grid, "polar grid spec RxA@rmax");
  auto* sc_series_opt = sc->add_option("--K,--series-order", sc_series, "reference series order");
  auto* sc_tol_opt = sc->add_option("--tol", sc_tol, "relative deviation tolerance");
  sc->add_option("-o,--out", sc_out, "write the comparison report here");
  sc->add_option("--config", sc_config, "JSON config merged under explicit flags");
  sc->callback([&] {
    const json cfg = load_config(sc_config);
    merge_number(sc_t_opt, cfg, "t", sc_t);
    merge_string(sc_grid_opt, cfg, "grid", sc_grid);
    merge_int(sc_series_opt, cfg, "series-order", sc_series);
    merge_number(sc_tol_opt, cfg, "tol", sc_tol);
    int radii = 5, angles = 5;
    double r_max = 2.0;
    parse_polar_spec(sc_grid, radii, angles, r_max);
    const entireop::TaylorPoly phi =
        entireop::taylor_from_json(entireop::read_json_file(sc_phi));
    const std::vector<Complex> grid = entireop::polar_grid(radii, angles, r_max);
    const entireop::SchrodingerReport report =
        entireop::schrodinger_check(phi, sc_t, grid, sc_series, sc_tol);
    json samples = json::array();
    for (const entireop::SchrodingerSample& s : report.samples) {
      samples.push_back({{"z", {s.z.real(), s.z.imag()}},
                         {"factored", {{"re", s.factored.real()}, {"im", s.factored.imag()}}},
                         {"series", {{"re", s.series.real()}, {"im", s.series.imag()}}},
                         {"rel_deviation", s.rel_deviation},
                         {"pde_residual", s.pde_residual}});
    }
    const json doc = {{"max_rel_deviation", report.max_rel_deviation},
                      {"max_pde_residual", report.max_pde_residual},
                      {"tol", report.tol},
                      {"pass", report.pass},
                      {"samples", std::move(samples)}};
    emit(doc, sc_out);
    rc = report.pass ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const entireop::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const entireop::CertificateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
