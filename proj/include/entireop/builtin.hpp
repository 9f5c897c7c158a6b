#pragma once

#include <span>
#include <vector>

#include "entireop/operator.hpp"
#include "entireop/taylor.hpp"

namespace entireop {

// Translation f -> f(. + shift): coefficient at index a is the constant
// shift^a / a!.
OperatorSymbol translation_symbol(std::span<const Complex> shift, int max_order,
                                  int coeff_trunc);

// Dilation-generating symbol with coefficient sigma^|a| z^a / a! at index a;
// applied to f it reproduces f((1 + sigma) z) up to the truncation order.
// Requires coeff_trunc >= max_order so every coefficient monomial fits.
OperatorSymbol dilation_symbol(Complex sigma, int dim, int max_order, int coeff_trunc);

// One-variable propagator for i u_t = -(1/2) u'' + z u with u(0) = phi:
//   u(t) = e^{-i(t z + t^3/6)} exp((i t / 2) d^2 + (t^2 / 2) d) phi.
// The symbol carries the outer exponential prefactor inside each coefficient:
// coefficient at order m is q_m(t) * G(z, t) where
//   q_m = sum_{2j + k = m} (i t / 2)^j (t^2 / 2)^k / (j! k!)
// and G is the prefactor's Taylor expansion through coeff_trunc.
OperatorSymbol schrodinger_propagator(double t, int max_order = 24, int coeff_trunc = 60);

// Reference propagator: truncated exponential series sum_{k <= series_order}
// (-i t)^k H^k phi / k! for H phi = -(1/2) phi'' + z phi, computed with exact
// polynomial arithmetic at an internal working truncation phi.trunc +
// series_order (each H application raises the degree by at most one, so
// nothing is lost). Requires series_order >= 0.
TaylorPoly hamiltonian_series_oracle(const TaylorPoly& phi, double t, int series_order);

struct SchrodingerSample {
  Complex z;
  Complex factored;        // propagator applied through the symbol
  Complex series;          // exponential-series reference
  double rel_deviation = 0.0;
  double pde_residual = 0.0;
};

struct SchrodingerReport {
  double max_rel_deviation = 0.0;
  double max_pde_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::vector<SchrodingerSample> samples;
};

// Evaluate both routes on the given grid points and difference-quotient the
// propagator in t (central step fd_step) to measure the equation residual
// |i du/dt + (1/2) u'' - z u| pointwise.
SchrodingerReport schrodinger_check(const TaylorPoly& phi, double t,
                                    std::span<const Complex> grid, int series_order, double tol,
                                    double fd_step = 1e-4);

// radii * angles points r_j e^{i theta_k}, r_j = r_max (j + 1) / radii,
// theta_k = 2 pi k / angles; deterministic row-major order
std::vector<Complex> polar_grid(int radii, int angles, double r_max);

}  // namespace entireop
