#include "entireop/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

namespace entireop {

namespace {

using nlohmann::json;

const json& require_field(const json& j, const char* name, const char* where) {
  if (!j.is_object() || !j.contains(name)) {
    throw ParseError(std::string("missing field \"") + name + "\" in " + where);
  }
  return j.at(name);
}

int require_int(const json& j, const char* name, const char* where) {
  const json& v = require_field(j, name, where);
  if (!v.is_number_integer())
    throw ParseError(std::string("field \"") + name + "\" in " + where + " must be an integer");
  return v.get<int>();
}

double require_number(const json& j, const char* name, const char* where) {
  const json& v = require_field(j, name, where);
  if (!v.is_number())
    throw ParseError(std::string("field \"") + name + "\" in " + where + " must be a number");
  return v.get<double>();
}

MultiIndex index_from_json(const json& v, int dim, const char* name, const char* where) {
  if (!v.is_array())
    throw ParseError(std::string("field \"") + name + "\" in " + where + " must be an array");
  if (static_cast<int>(v.size()) != dim)
    throw ParseError(std::string("field \"") + name + "\" in " + where +
                     " has wrong length for dim");
  std::vector<int> entries;
  entries.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number_integer() || e.get<int>() < 0)
      throw ParseError(std::string("field \"") + name + "\" in " + where +
                       " must hold nonnegative integers");
    entries.push_back(e.get<int>());
  }
  return MultiIndex(std::move(entries));
}

json index_to_json(const MultiIndex& a) {
  json arr = json::array();
  for (int k = 0; k < a.dim(); ++k) arr.push_back(a[k]);
  return arr;
}

json finite_or_null(double x) {
  if (std::isinf(x) || std::isnan(x)) return nullptr;
  return x;
}

}  // namespace

nlohmann::json to_json(const TaylorPoly& f) {
  json coeffs = json::array();
  for (const auto& [mu, c] : f.coeffs()) {
    coeffs.push_back({{"alpha", index_to_json(mu)}, {"re", c.real()}, {"im", c.imag()}});
  }
  return {{"dim", f.dim()}, {"trunc", f.trunc()}, {"coeffs", std::move(coeffs)}};
}

TaylorPoly taylor_from_json(const nlohmann::json& j) {
  const char* where = "TaylorPoly";
  const int dim = require_int(j, "dim", where);
  const int trunc = require_int(j, "trunc", where);
  if (dim < 0) throw ParseError("field \"dim\" in TaylorPoly must be nonnegative");
  if (trunc < 0) throw ParseError("field \"trunc\" in TaylorPoly must be nonnegative");
  const json& coeffs = require_field(j, "coeffs", where);
  if (!coeffs.is_array()) throw ParseError("field \"coeffs\" in TaylorPoly must be an array");
  TaylorPoly out(dim, trunc);
  for (const json& entry : coeffs) {
    const MultiIndex mu =
        index_from_json(require_field(entry, "alpha", "coefficient entry"), dim, "alpha",
                        "coefficient entry");
    const double re = require_number(entry, "re", "coefficient entry");
    const double im = entry.contains("im") ? require_number(entry, "im", "coefficient entry")
                                           : 0.0;
    if (mu.degree() > trunc)
      throw ParseError("field \"alpha\" in coefficient entry exceeds \"trunc\"");
    out.add_coeff(mu, Complex(re, im));
  }
  return out;
}

nlohmann::json to_json(const OperatorSymbol& op) {
  json terms = json::array();
  for (const auto& [a, coeff] : op.terms()) {
    terms.push_back({{"alpha", index_to_json(a)}, {"coeff", to_json(coeff)}});
  }
  return {{"dim", op.dim()}, {"max_order", op.max_order()}, {"terms", std::move(terms)}};
}

OperatorSymbol operator_from_json(const nlohmann::json& j) {
  const char* where = "OperatorSymbol";
  const int dim = require_int(j, "dim", where);
  const int max_order = require_int(j, "max_order", where);
  if (dim < 0) throw ParseError("field \"dim\" in OperatorSymbol must be nonnegative");
  if (max_order < 0) throw ParseError("field \"max_order\" in OperatorSymbol must be nonnegative");
  const json& terms = require_field(j, "terms", where);
  if (!terms.is_array()) throw ParseError("field \"terms\" in OperatorSymbol must be an array");
  OperatorSymbol out(dim, max_order);
  for (const json& entry : terms) {
    const MultiIndex a = index_from_json(require_field(entry, "alpha", "operator term"), dim,
                                         "alpha", "operator term");
    if (a.degree() > max_order)
      throw ParseError("field \"alpha\" in operator term exceeds \"max_order\"");
    TaylorPoly coeff = taylor_from_json(require_field(entry, "coeff", "operator term"));
    if (coeff.dim() != dim)
      throw ParseError("field \"coeff\" in operator term has mismatched dim");
    const TaylorPoly* existing = out.term(a);
    out.set_term(a, existing ? add(*existing, coeff) : std::move(coeff));
  }
  return out;
}

nlohmann::json to_json(const NormBracket& b) {
  return {{"lower", b.lower}, {"upper", finite_or_null(b.upper)}};
}

nlohmann::json to_json(const ClassVerdict& v) {
  json certs = json::array();
  for (const ConditionCertificate& c : v.certificates) {
    json margins = json::array();
    for (double m : c.margin_by_degree) margins.push_back(std::min(m, 1e300));
    certs.push_back({{"eps", c.eps},
                     {"B", c.scale},
                     {"C", std::min(c.constant, 1e300)},
                     {"margin_by_degree", std::move(margins)}});
  }
  return {{"mode", to_string(v.mode)},
          {"condition", to_string(v.condition)},
          {"status", to_string(v.status)},
          {"max_degree_checked", v.max_degree_checked},
          {"certificates", std::move(certs)}};
}

namespace {

ClassMode mode_from_string(const std::string& s) {
  if (s == "normal") return ClassMode::normal;
  if (s == "minimal") return ClassMode::minimal;
  throw ParseError("field \"mode\" in ClassVerdict must be \"normal\" or \"minimal\"");
}

Condition condition_from_string(const std::string& s) {
  if (s == "I") return Condition::I;
  if (s == "II") return Condition::II;
  if (s == "III") return Condition::III;
  if (s == "IV") return Condition::IV;
  throw ParseError("field \"condition\" in ClassVerdict must be one of I, II, III, IV");
}

VerdictStatus status_from_string(const std::string& s) {
  if (s == "pass") return VerdictStatus::pass;
  if (s == "fail") return VerdictStatus::fail;
  if (s == "inconclusive") return VerdictStatus::inconclusive;
  throw ParseError("field \"status\" in ClassVerdict must be pass, fail, or inconclusive");
}

std::string require_string(const json& j, const char* name, const char* where) {
  const json& v = require_field(j, name, where);
  if (!v.is_string())
    throw ParseError(std::string("field \"") + name + "\" in " + where + " must be a string");
  return v.get<std::string>();
}

}  // namespace

ClassVerdict verdict_from_json(const nlohmann::json& j) {
  const char* where = "ClassVerdict";
  ClassVerdict v;
  v.mode = mode_from_string(require_string(j, "mode", where));
  v.condition = condition_from_string(require_string(j, "condition", where));
  v.status = status_from_string(require_string(j, "status", where));
  v.max_degree_checked = require_int(j, "max_degree_checked", where);
  const json& certs = require_field(j, "certificates", where);
  if (!certs.is_array())
    throw ParseError("field \"certificates\" in ClassVerdict must be an array");
  for (const json& c : certs) {
    ConditionCertificate cert;
    cert.eps = require_number(c, "eps", "certificate");
    cert.scale = require_number(c, "B", "certificate");
    cert.constant = require_number(c, "C", "certificate");
    if (!(cert.eps > 0.0) || !(cert.scale > 0.0) || !(cert.constant >= 0.0))
      throw ParseError("certificate fields \"eps\", \"B\" must be positive and \"C\" nonnegative");
    cert.status = v.status;
    const json& margins = require_field(c, "margin_by_degree", "certificate");
    if (!margins.is_array())
      throw ParseError("field \"margin_by_degree\" in certificate must be an array");
    for (const json& m : margins) {
      if (!m.is_number())
        throw ParseError("field \"margin_by_degree\" in certificate must hold numbers");
      cert.margin_by_degree.push_back(m.get<double>());
    }
    v.certificates.push_back(std::move(cert));
  }
  return v;
}

nlohmann::json to_json(const ApplyReport& r) {
  json out = {{"terms_used", r.terms_used},
              {"tail_bound", r.tail_bound ? json(finite_or_null(*r.tail_bound)) : json(nullptr)},
              {"tail_params", nullptr}};
  if (r.tail_params) {
    out["tail_params"] = {{"eps", r.tail_params->eps},       {"B", r.tail_params->scale},
                          {"C", finite_or_null(r.tail_params->constant)},
                          {"tau", r.tail_params->type_in},   {"tau_prime", r.tail_params->type_out},
                          {"ratio", r.tail_params->ratio}};
  }
  return out;
}

BlackBoxTable black_box_from_json(const nlohmann::json& j) {
  const char* where = "black box table";
  BlackBoxTable table;
  table.dim = require_int(j, "dim", where);
  if (table.dim < 0) throw ParseError("field \"dim\" in black box table must be nonnegative");
  const json& entries = require_field(j, "entries", where);
  if (!entries.is_array())
    throw ParseError("field \"entries\" in black box table must be an array");
  int declared = std::numeric_limits<int>::max();
  for (const json& entry : entries) {
    const MultiIndex b = index_from_json(require_field(entry, "beta", "black box entry"),
                                         table.dim, "beta", "black box entry");
    TaylorPoly value = taylor_from_json(require_field(entry, "value", "black box entry"));
    if (value.dim() != table.dim)
      throw ParseError("field \"value\" in black box entry has mismatched dim");
    declared = std::min(declared, value.trunc());
    if (!table.entries.emplace(b, std::move(value)).second)
      throw ParseError("field \"beta\" in black box entry is duplicated");
  }
  if (table.entries.empty()) declared = 0;
  if (j.contains("trunc")) declared = require_int(j, "trunc", where);
  table.declared_trunc = declared;
  return table;
}

BlackBoxOperator make_table_operator(BlackBoxTable table, int required_max_order) {
  std::string missing;
  int missing_count = 0;
  for (int k = 0; k <= required_max_order; ++k) {
    for (const MultiIndex& b : enumerate_degree(table.dim, k)) {
      if (table.entries.count(b)) continue;
      ++missing_count;
      if (missing_count <= 16) {
        if (!missing.empty()) missing += ", ";
        missing += "[";
        for (int i = 0; i < b.dim(); ++i) {
          if (i) missing += ",";
          missing += std::to_string(b[i]);
        }
        missing += "]";
      }
    }
  }
  if (missing_count > 0) {
    std::ostringstream msg;
    msg << "black box table is missing " << missing_count
        << " monomial entries up to max_order: " << missing;
    if (missing_count > 16) msg << ", ...";
    throw ParseError(msg.str());
  }
  auto shared = std::make_shared<BlackBoxTable>(std::move(table));
  BlackBoxOperator box;
  box.dim = shared->dim;
  box.declared_trunc = shared->declared_trunc;
  box.action = [shared](const MultiIndex& b) -> TaylorPoly {
    auto it = shared->entries.find(b);
    if (it == shared->entries.end())
      throw ParseError("black box table has no entry for a requested exponent");
    return it->second;
  };
  return box;
}

Complex complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  if (j.is_object()) {
    const double re = require_number(j, "re", "complex value");
    const double im = j.contains("im") ? require_number(j, "im", "complex value") : 0.0;
    return Complex(re, im);
  }
  throw ParseError("complex value must be a number, [re, im], or {\"re\", \"im\"}");
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void write_json_atomic(const std::string& path, const nlohmann::json& j) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot open output file: " + tmp.string());
    out << dump_json(j);
    if (!out.good()) throw std::runtime_error("failed writing output file: " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace entireop
