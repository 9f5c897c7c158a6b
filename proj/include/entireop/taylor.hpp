#pragma once

#include <complex>
#include <map>
#include <span>
#include <vector>

#include "entireop/growth_params.hpp"
#include "entireop/multi_index.hpp"

namespace entireop {

using Complex = std::complex<double>;

// Coefficients with modulus below this are dropped on insertion.
inline constexpr double kCoeffDropFloor = 1e-300;

// Truncated Taylor expansion around 0 in n complex variables, stored sparsely
// as monomial coefficients keyed by exponent in graded-lex order. "trunc" is
// the largest total degree the object claims to represent; stored degrees
// never exceed it.
class TaylorPoly {
 public:
  TaylorPoly(int dim, int trunc);

  static TaylorPoly zero(int dim, int trunc) { return TaylorPoly(dim, trunc); }

  int dim() const { return dim_; }
  int trunc() const { return trunc_; }
  const std::map<MultiIndex, Complex, GrlexLess>& coeffs() const { return coeffs_; }

  Complex coeff(const MultiIndex& mu) const;

  // Validates dimension, degree <= trunc, and finiteness; drops entries with
  // modulus below kCoeffDropFloor.
  void set_coeff(const MultiIndex& mu, Complex c);
  void add_coeff(const MultiIndex& mu, Complex c);

  bool is_zero() const { return coeffs_.empty(); }

  // largest stored total degree, -1 when zero
  int max_degree() const;

  // Reinterpret at a different truncation order: stored entries above the new
  // order are dropped; raising the order just widens the declared window.
  TaylorPoly truncated(int new_trunc) const;

 private:
  int dim_ = 0;
  int trunc_ = 0;
  std::map<MultiIndex, Complex, GrlexLess> coeffs_;
};

// c * z^exponents; requires |exponents| <= trunc
TaylorPoly monomial(int dim, const MultiIndex& exponents, Complex c, int trunc);

// integer power by repeated squaring (deterministic evaluation path)
Complex pow_int(Complex base, int e);

// sum of stored terms in graded-lex order (low degree first)
Complex eval(const TaylorPoly& f, std::span<const Complex> z);
Complex eval(const TaylorPoly& f, const std::vector<Complex>& z);

// partial derivative d^a f; result truncation trunc - |a|, floored at 0
TaylorPoly derivative(const TaylorPoly& f, const MultiIndex& a);

// dims must match; result truncation is the min of the operands'
TaylorPoly add(const TaylorPoly& f, const TaylorPoly& g);
TaylorPoly scale(const TaylorPoly& f, Complex c);
TaylorPoly mul(const TaylorPoly& f, const TaylorPoly& g);

// f(z + shift), re-expanded around 0 at the same truncation
TaylorPoly translate(const TaylorPoly& f, std::span<const Complex> shift);

// f(factor * z)
TaylorPoly dilate(const TaylorPoly& f, Complex factor);

// Growth-norm upper bound of the tail of f from total degree m on
// (empty tail gives 0). Decreasing in m up to scan refinement error.
double taylor_tail_norm(const TaylorPoly& f, int m, const GrowthParams& params);

}  // namespace entireop
