#include "entireop/taylor.hpp"

#include <cmath>
#include <stdexcept>

#include "entireop/growth.hpp"

namespace entireop {

TaylorPoly::TaylorPoly(int dim, int trunc) : dim_(dim), trunc_(trunc) {
  if (dim < 0) throw std::invalid_argument("TaylorPoly dimension must be nonnegative");
  if (trunc < 0) throw std::invalid_argument("TaylorPoly truncation must be nonnegative");
}

Complex TaylorPoly::coeff(const MultiIndex& mu) const {
  auto it = coeffs_.find(mu);
  return it == coeffs_.end() ? Complex(0.0, 0.0) : it->second;
}

void TaylorPoly::set_coeff(const MultiIndex& mu, Complex c) {
  if (mu.dim() != dim_) throw std::invalid_argument("coefficient index dimension mismatch");
  if (mu.degree() > trunc_)
    throw std::invalid_argument("coefficient degree exceeds truncation order");
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
    throw std::invalid_argument("coefficient must be finite");
  if (std::abs(c) < kCoeffDropFloor) {
    coeffs_.erase(mu);
  } else {
    coeffs_[mu] = c;
  }
}

void TaylorPoly::add_coeff(const MultiIndex& mu, Complex c) {
  set_coeff(mu, coeff(mu) + c);
}

int TaylorPoly::max_degree() const {
  if (coeffs_.empty()) return -1;
  return coeffs_.rbegin()->first.degree();
}

TaylorPoly TaylorPoly::truncated(int new_trunc) const {
  TaylorPoly out(dim_, new_trunc);
  for (const auto& [mu, c] : coeffs_) {
    if (mu.degree() <= new_trunc) out.set_coeff(mu, c);
  }
  return out;
}

TaylorPoly monomial(int dim, const MultiIndex& exponents, Complex c, int trunc) {
  TaylorPoly out(dim, trunc);
  out.set_coeff(exponents, c);
  return out;
}

Complex pow_int(Complex base, int e) {
  if (e < 0) throw std::invalid_argument("pow_int exponent must be nonnegative");
  Complex r(1.0, 0.0);
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

namespace {

Complex eval_monomial(const MultiIndex& mu, std::span<const Complex> z) {
  Complex r(1.0, 0.0);
  for (int k = 0; k < mu.dim(); ++k) r *= pow_int(z[static_cast<size_t>(k)], mu[k]);
  return r;
}

}  // namespace

Complex eval(const TaylorPoly& f, std::span<const Complex> z) {
  if (static_cast<int>(z.size()) != f.dim())
    throw std::invalid_argument("evaluation point dimension mismatch");
  Complex sum(0.0, 0.0);
  for (const auto& [mu, c] : f.coeffs()) sum += c * eval_monomial(mu, z);
  return sum;
}

Complex eval(const TaylorPoly& f, const std::vector<Complex>& z) {
  return eval(f, std::span<const Complex>(z));
}

TaylorPoly derivative(const TaylorPoly& f, const MultiIndex& a) {
  if (a.dim() != f.dim()) throw std::invalid_argument("derivative index dimension mismatch");
  TaylorPoly out(f.dim(), std::max(0, f.trunc() - a.degree()));
  for (const auto& [mu, c] : f.coeffs()) {
    if (!leq(a, mu)) continue;
    // mu! / (mu - a)! as an exact integer, rounded once to double
    const MultiIndex target = sub(mu, a);
    const BigInt falling = factorial(mu) / factorial(target);
    out.add_coeff(target, c * to_double(falling));
  }
  return out;
}

TaylorPoly add(const TaylorPoly& f, const TaylorPoly& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("polynomial dimension mismatch");
  TaylorPoly out(f.dim(), std::min(f.trunc(), g.trunc()));
  for (const auto& [mu, c] : f.coeffs()) {
    if (mu.degree() <= out.trunc()) out.add_coeff(mu, c);
  }
  for (const auto& [mu, c] : g.coeffs()) {
    if (mu.degree() <= out.trunc()) out.add_coeff(mu, c);
  }
  return out;
}

TaylorPoly scale(const TaylorPoly& f, Complex c) {
  TaylorPoly out(f.dim(), f.trunc());
  for (const auto& [mu, v] : f.coeffs()) out.set_coeff(mu, v * c);
  return out;
}

TaylorPoly mul(const TaylorPoly& f, const TaylorPoly& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("polynomial dimension mismatch");
  TaylorPoly out(f.dim(), std::min(f.trunc(), g.trunc()));
  for (const auto& [mu, cf] : f.coeffs()) {
    for (const auto& [nu, cg] : g.coeffs()) {
      if (mu.degree() + nu.degree() > out.trunc()) continue;
      out.add_coeff(add(mu, nu), cf * cg);
    }
  }
  return out;
}

TaylorPoly translate(const TaylorPoly& f, std::span<const Complex> shift) {
  if (static_cast<int>(shift.size()) != f.dim())
    throw std::invalid_argument("shift dimension mismatch");
  TaylorPoly out(f.dim(), f.trunc());
  for (const auto& [mu, c] : f.coeffs()) {
    for (const MultiIndex& beta : enumerate_below(mu)) {
      const MultiIndex rest = sub(mu, beta);
      Complex shift_pow(1.0, 0.0);
      for (int k = 0; k < f.dim(); ++k)
        shift_pow *= pow_int(shift[static_cast<size_t>(k)], rest[k]);
      out.add_coeff(beta, c * to_double(binomial(mu, beta)) * shift_pow);
    }
  }
  return out;
}

TaylorPoly dilate(const TaylorPoly& f, Complex factor) {
  TaylorPoly out(f.dim(), f.trunc());
  for (const auto& [mu, c] : f.coeffs()) out.set_coeff(mu, c * pow_int(factor, mu.degree()));
  return out;
}

double taylor_tail_norm(const TaylorPoly& f, int m, const GrowthParams& params) {
  TaylorPoly tail(f.dim(), f.trunc());
  for (const auto& [mu, c] : f.coeffs()) {
    if (mu.degree() >= m) tail.set_coeff(mu, c);
  }
  return norm_upper(tail, params);
}

}  // namespace entireop
