#pragma once

#include <functional>
#include <vector>

#include "entireop/operator.hpp"
#include "entireop/taylor.hpp"

namespace entireop {

// Operator known only through its action on monomials: action(b) returns the
// image of z^b as a Taylor polynomial. Every returned polynomial shares dim
// and has truncation at least declared_trunc.
struct BlackBoxOperator {
  int dim = 0;
  int declared_trunc = 0;
  std::function<TaylorPoly(const MultiIndex&)> action;
};

// Wrap a symbol as a black box whose action is the truncated application to
// monomials. The monomial fed to the operator for exponent b is carried at
// truncation monomial_trunc + |b| so the returned image is valid through
// total degree min(monomial_trunc, coefficient truncations).
BlackBoxOperator as_black_box(const OperatorSymbol& op, int monomial_trunc);

// Recover the coefficient family from monomial images:
//   c_a(z) = sum_{b <= a} (-1)^(|a - b|) z^(a - b) / ((a - b)! b!) * action(b),
// assembled largest |b| first. coeff_trunc < 0 means use declared_trunc.
OperatorSymbol extract_symbol(const BlackBoxOperator& box, int max_order, int coeff_trunc = -1);

struct RoundTripCase {
  bool covered = true;  // false when the test degree exceeds the symbol order
  double max_error = 0.0;
};

struct RoundTripReport {
  double max_error = 0.0;  // over covered cases
  bool pass = true;
  double tol = 0.0;
  std::vector<RoundTripCase> cases;
};

// Compare, coefficientwise, the linear extension of the black box's monomial
// action against applying the extracted symbol, on each test polynomial.
// Tests of degree beyond the symbol's max_order are flagged not covered and
// excluded from the maximum.
RoundTripReport verify_roundtrip(const BlackBoxOperator& box, const OperatorSymbol& extracted,
                                 const std::vector<TaylorPoly>& tests, double tol);

// Extract both symbols through their monomial action up to max_degree and
// report whether they agree within 1e-10 (coefficient extraction is unique,
// so equal actions must produce equal symbols).
bool extraction_uniqueness_probe(const OperatorSymbol& p, const OperatorSymbol& q,
                                 int max_degree);

}  // namespace entireop
