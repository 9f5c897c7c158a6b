#pragma once

#include <map>
#include <optional>
#include <stdexcept>

#include "entireop/growth.hpp"
#include "entireop/growth_params.hpp"
#include "entireop/multi_index.hpp"
#include "entireop/taylor.hpp"

namespace entireop {

// Raised when a classification certificate cannot support a tail bound at the
// requested growth parameters (geometric ratio >= 1 for every certified eps).
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Infinite-order differential operator sum_a c_a(z) d^a, truncated at
// |a| <= max_order. Coefficients are Taylor polynomials over the same
// variables; identically zero coefficients are not stored.
class OperatorSymbol {
 public:
  OperatorSymbol(int dim, int max_order);

  int dim() const { return dim_; }
  int max_order() const { return max_order_; }
  const std::map<MultiIndex, TaylorPoly, GrlexLess>& terms() const { return terms_; }

  // validates dimension agreement and |a| <= max_order; a zero polynomial
  // erases the slot
  void set_term(const MultiIndex& a, TaylorPoly coeff);

  // nullptr when no coefficient is stored at a
  const TaylorPoly* term(const MultiIndex& a) const;

 private:
  int dim_ = 0;
  int max_order_ = 0;
  std::map<MultiIndex, TaylorPoly, GrlexLess> terms_;
};

struct TailParams {
  double eps = 0.0;
  double scale = 0.0;       // B
  double constant = 0.0;    // C
  double type_in = 0.0;     // tau the input norm was measured at
  double type_out = 0.0;    // B + subadditivity_factor * tau
  double ratio = 0.0;       // 4 sqrt(dim) (e tau order)^(1/order) eps
};

struct ApplyReport {
  TaylorPoly result;
  int terms_used = 0;
  // Present only when a pass certificate was supplied and some certified eps
  // has ratio < 1: bound on the norm (at type_out) of the part of the full
  // series beyond max_order, scaled by the input's norm upper bound.
  std::optional<double> tail_bound;
  std::optional<TailParams> tail_params;
};

// sum_{|a| <= max_order} c_a * d^a f, accumulated in increasing |a|.
// Result truncation: min over consumed terms of min(coeff trunc,
// f.trunc - |a|); f.trunc when the operator has no terms. If certificate is
// given it must be a pass verdict for this symbol at params.order; the
// certified eps rows are then used for the tail bound, and a CertificateError
// is raised when every row has geometric ratio >= 1 at this type.
ApplyReport apply(const OperatorSymbol& op, const TaylorPoly& f, const GrowthParams& params,
                  const ClassVerdict* certificate = nullptr);

// plain truncated action, no growth bookkeeping
TaylorPoly apply_truncated(const OperatorSymbol& op, const TaylorPoly& f);

// termwise sum; max_order is the larger of the two
OperatorSymbol add(const OperatorSymbol& p, const OperatorSymbol& q);

// composition (p after q) truncated at |result index| <= result_max_order:
// the Leibniz expansion of c_a d^a (b_e d^e) contributes
// binom(a, d) c_a (d^d b_e) d^(a - d + e) for every d <= a
OperatorSymbol compose(const OperatorSymbol& p, const OperatorSymbol& q, int result_max_order);

// convenience wrapper: condition IV (normal) or its minimal variant over the
// default grids
ClassVerdict classify(const OperatorSymbol& op, double order, ClassMode mode);

// largest coefficient-wise difference between two symbols (union of stored
// indices, absent entries treated as zero); dims must match
double max_symbol_diff(const OperatorSymbol& p, const OperatorSymbol& q);

}  // namespace entireop
