#pragma once

#include <string>
#include <vector>

#include "entireop/growth_params.hpp"
#include "entireop/multi_index.hpp"
#include "entireop/taylor.hpp"

namespace entireop {

class OperatorSymbol;

// Two-sided enclosure of the growth norm sup_z |f(z)| exp(-type |z|^order).
// upper may be +infinity when the scan value overflows double range.
struct NormBracket {
  double lower = 0.0;
  double upper = 0.0;
};

// upper: supremum of the coefficient-modulus radial majorant (a true upper
// bound since |f(z)| <= sum_k S_k r^k on |z| = r); lower: best witness value
// over the positive real axis plus a fixed set of random complex directions.
NormBracket norm_bracket(const TaylorPoly& f, const GrowthParams& params);

// just the upper end of the bracket (skips the witness scan)
double norm_upper(const TaylorPoly& f, const GrowthParams& params);

// log of norm_upper, usable when the linear value overflows;
// -infinity for the zero polynomial
double log_norm_upper(const TaylorPoly& f, const GrowthParams& params);

// closed-form bound for the norm of z^exponents: (|b|/(e*type*order))^(|b|/order),
// equal to 1 at b = 0; tight in dimension 1
double monomial_norm_bound(const MultiIndex& exponents, const GrowthParams& params);

// factor bounding ||d^a f|| at type subadditivity_factor()*type against
// ||f|| at type:  a! |a|^(-|a|/order) (e*type*order)^(|a|/order) (2 sqrt(dim))^|a|;
// equal to 1 at a = 0
double derivative_norm_bound(const MultiIndex& a, const GrowthParams& params, int dim);

// The three rungs of the comparison chain between the two weight families,
// evaluated at a given index:
//   low  = dim^-|a| e^(-|a|/order) |a|^(|a|/order) / a!
//   mid  = |a|!^(-(1 - 1/order))          (exponent 0 when order == 1)
//   high = |a|^(|a|/order) / a!
// Always low <= mid <= high.
struct EquivalenceFactors {
  double low = 0.0;
  double mid = 0.0;
  double high = 0.0;
};
EquivalenceFactors equivalence_factors(const MultiIndex& a, const GrowthParams& params,
                                       int dim);

enum class ClassMode { normal, minimal };

// The four decay conditions on an operator symbol's coefficient family.
// I and II are sup-form, III and IV are norm-form; computationally I
// coincides with III and II with IV once the sup is evaluated as a norm.
enum class Condition { I, II, III, IV };

enum class VerdictStatus { pass, fail, inconclusive };

std::string to_string(ClassMode m);
std::string to_string(Condition c);
std::string to_string(VerdictStatus s);

// One eps row of a verdict: the best scale parameter found for that eps,
// the bound constant making the condition inequality hold at every stored
// degree, and the per-degree margins (margin <= C everywhere by construction
// of C; entries for degrees with no stored coefficient are 0).
struct ConditionCertificate {
  double eps = 0.0;
  double scale = 0.0;     // B
  double constant = 0.0;  // C
  VerdictStatus status = VerdictStatus::inconclusive;
  std::vector<double> margin_by_degree;
};

struct ClassVerdict {
  ClassMode mode = ClassMode::normal;
  Condition condition = Condition::IV;
  VerdictStatus status = VerdictStatus::inconclusive;
  int max_degree_checked = 0;
  std::vector<ConditionCertificate> certificates;  // one per eps, in grid order
};

// eps grid 1, 1/2, ..., 2^-8
std::vector<double> default_eps_grid();
// scale grid: 48 log-spaced points spanning [1e-3, 1e5]
std::vector<double> default_scale_grid();

// Check one decay condition for the coefficient family of a symbol at the
// given growth order, over the eps and scale grids. Verdict aggregation:
// pass if every eps row passes, fail if any eps row fails at every scale,
// inconclusive otherwise.
ClassVerdict check_condition(const OperatorSymbol& symbol, double order, ClassMode mode,
                             Condition which, const std::vector<double>& eps_grid,
                             const std::vector<double>& scale_grid);

}  // namespace entireop
