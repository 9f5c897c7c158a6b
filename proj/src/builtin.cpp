#include "entireop/builtin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace entireop {

OperatorSymbol translation_symbol(std::span<const Complex> shift, int max_order,
                                  int coeff_trunc) {
  const int dim = static_cast<int>(shift.size());
  OperatorSymbol out(dim, max_order);
  for (int k = 0; k <= max_order; ++k) {
    for (const MultiIndex& a : enumerate_degree(dim, k)) {
      Complex num(1.0, 0.0);
      for (int j = 0; j < dim; ++j) num *= pow_int(shift[static_cast<size_t>(j)], a[j]);
      const Complex value = num / to_double(factorial(a));
      if (std::abs(value) == 0.0) continue;
      out.set_term(a, monomial(dim, MultiIndex::zeros(dim), value, coeff_trunc));
    }
  }
  return out;
}

OperatorSymbol dilation_symbol(Complex sigma, int dim, int max_order, int coeff_trunc) {
  if (coeff_trunc < max_order)
    throw std::invalid_argument("dilation coefficients need coeff_trunc >= max_order");
  OperatorSymbol out(dim, max_order);
  for (int k = 0; k <= max_order; ++k) {
    const Complex sk = pow_int(sigma, k);
    if (std::abs(sk) == 0.0 && k > 0) continue;
    for (const MultiIndex& a : enumerate_degree(dim, k)) {
      const Complex value = sk / to_double(factorial(a));
      out.set_term(a, monomial(dim, a, value, coeff_trunc));
    }
  }
  return out;
}

OperatorSymbol schrodinger_propagator(double t, int max_order, int coeff_trunc) {
  if (max_order < 0 || coeff_trunc < 0)
    throw std::invalid_argument("schrodinger propagator orders must be nonnegative");
  const Complex i(0.0, 1.0);

  // prefactor e^{-i t^3/6} e^{-i t z}, expanded through coeff_trunc
  const Complex phase = std::exp(-i * (t * t * t) / 6.0);
  TaylorPoly prefactor(1, coeff_trunc);
  Complex term = phase;
  for (int j = 0; j <= coeff_trunc; ++j) {
    prefactor.set_coeff(MultiIndex({j}), term);
    term *= -i * t / static_cast<double>(j + 1);
  }

  OperatorSymbol out(1, max_order);
  for (int m = 0; m <= max_order; ++m) {
    // q_m = sum over j, k with 2j + k = m of (i t / 2)^j (t^2 / 2)^k / (j! k!)
    Complex qm(0.0, 0.0);
    for (int j = 0; 2 * j <= m; ++j) {
      const int k = m - 2 * j;
      qm += pow_int(i * t / 2.0, j) * pow_int(Complex(t * t / 2.0, 0.0), k) /
            (to_double(factorial(j)) * to_double(factorial(k)));
    }
    if (std::abs(qm) == 0.0) continue;
    out.set_term(MultiIndex({m}), scale(prefactor, qm));
  }
  return out;
}

namespace {

// H f = -(1/2) f'' + z f at the working truncation
TaylorPoly hamiltonian_step(const TaylorPoly& f, int work_trunc) {
  const MultiIndex two({2});
  TaylorPoly second = derivative(f, two).truncated(work_trunc);
  TaylorPoly zf = mul(monomial(1, MultiIndex({1}), Complex(1.0, 0.0), work_trunc),
                      f.truncated(work_trunc));
  return add(scale(second, Complex(-0.5, 0.0)), zf);
}

}  // namespace

TaylorPoly hamiltonian_series_oracle(const TaylorPoly& phi, double t, int series_order) {
  if (phi.dim() != 1)
    throw std::invalid_argument("hamiltonian series oracle expects one variable");
  if (series_order < 0) throw std::invalid_argument("series order must be nonnegative");
  const int work_trunc = phi.trunc() + series_order;
  const Complex i(0.0, 1.0);

  TaylorPoly acc = phi.truncated(work_trunc);
  TaylorPoly power = acc;
  Complex factor(1.0, 0.0);
  for (int k = 1; k <= series_order; ++k) {
    power = hamiltonian_step(power, work_trunc);
    factor *= -i * t / static_cast<double>(k);
    acc = add(acc, scale(power, factor));
  }
  return acc;
}

SchrodingerReport schrodinger_check(const TaylorPoly& phi, double t,
                                    std::span<const Complex> grid, int series_order, double tol,
                                    double fd_step) {
  if (phi.dim() != 1) throw std::invalid_argument("schrodinger check expects one variable");
  if (!(fd_step > 0.0)) throw std::invalid_argument("finite difference step must be positive");
  SchrodingerReport report;
  report.tol = tol;

  // The state is an exact polynomial, so its declared window may be widened
  // freely; without this the min-truncation rule of apply would clip the
  // image at phi.trunc - order instead of the propagator's coefficient
  // truncation.
  constexpr int kPropMaxOrder = 24;
  constexpr int kPropCoeffTrunc = 60;
  const TaylorPoly wide = phi.truncated(phi.trunc() + kPropCoeffTrunc + kPropMaxOrder);

  const OperatorSymbol prop = schrodinger_propagator(t, kPropMaxOrder, kPropCoeffTrunc);
  const TaylorPoly at_t = apply_truncated(prop, wide);
  const TaylorPoly reference = hamiltonian_series_oracle(phi, t, series_order);
  const TaylorPoly plus =
      apply_truncated(schrodinger_propagator(t + fd_step, kPropMaxOrder, kPropCoeffTrunc), wide);
  const TaylorPoly minus =
      apply_truncated(schrodinger_propagator(t - fd_step, kPropMaxOrder, kPropCoeffTrunc), wide);
  const TaylorPoly second = derivative(at_t, MultiIndex({2}));

  const Complex i(0.0, 1.0);
  constexpr double tiny = 1e-30;
  for (const Complex& z : grid) {
    SchrodingerSample s;
    s.z = z;
    const std::vector<Complex> zs{z};
    s.factored = eval(at_t, zs);
    s.series = eval(reference, zs);
    s.rel_deviation =
        std::abs(s.factored - s.series) / std::max(std::abs(s.series), tiny);
    const Complex du = (eval(plus, zs) - eval(minus, zs)) / (2.0 * fd_step);
    s.pde_residual = std::abs(i * du + 0.5 * eval(second, zs) - z * s.factored);
    report.max_rel_deviation = std::max(report.max_rel_deviation, s.rel_deviation);
    report.max_pde_residual = std::max(report.max_pde_residual, s.pde_residual);
    report.samples.push_back(s);
  }
  report.pass = report.max_rel_deviation <= tol;
  return report;
}

std::vector<Complex> polar_grid(int radii, int angles, double r_max) {
  if (radii <= 0 || angles <= 0 || !(r_max > 0.0))
    throw std::invalid_argument("polar grid needs positive radii, angles, r_max");
  std::vector<Complex> pts;
  pts.reserve(static_cast<size_t>(radii) * static_cast<size_t>(angles));
  for (int j = 0; j < radii; ++j) {
    const double r = r_max * (j + 1) / radii;
    for (int k = 0; k < angles; ++k) {
      const double th = 2.0 * std::numbers::pi * k / angles;
      pts.emplace_back(r * std::cos(th), r * std::sin(th));
    }
  }
  return pts;
}

}  // namespace entireop
