#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "entireop/builtin.hpp"
#include "entireop/growth.hpp"
#include "entireop/growth_params.hpp"
#include "entireop/multi_index.hpp"
#include "entireop/operator.hpp"
#include "entireop/taylor.hpp"

using namespace entireop;

namespace {

constexpr double kE = 2.718281828459045235;

TaylorPoly truncated_exp(int terms) {
  TaylorPoly f(1, terms);
  double inv_fact = 1.0;
  for (int k = 0; k <= terms; ++k) {
    f.set_coeff(MultiIndex({k}), inv_fact);
    if (k < terms) inv_fact /= static_cast<double>(k + 1);
  }
  return f;
}

TaylorPoly random_poly(int dim, int max_degree, int trunc, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  TaylorPoly f(dim, trunc);
  for (int k = 0; k <= max_degree; ++k)
    for (const MultiIndex& mu : enumerate_degree(dim, k))
      f.set_coeff(mu, {coeff(rng), coeff(rng)});
  return f;
}

// sup_r r^k exp(-type r^order), the exact norm of z^k in one variable
double monomial_norm(int k, const GrowthParams& params) {
  if (k == 0) return 1.0;
  return std::pow(static_cast<double>(k) / (kE * params.type * params.order),
                  static_cast<double>(k) / params.order);
}

}  // namespace

TEST_CASE("growth parameters validate and expose derived constants") {
  CHECK_THROWS_AS(GrowthParams(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GrowthParams(1.0, -2.0), std::invalid_argument);

  CHECK(GrowthParams(0.5, 1.0).subadditivity_factor() == 1.0);
  CHECK(GrowthParams(1.0, 1.0).subadditivity_factor() == 1.0);
  CHECK(GrowthParams(2.0, 1.0).subadditivity_factor() == 2.0);
  CHECK(GrowthParams(3.0, 1.0).subadditivity_factor() == 4.0);

  CHECK(GrowthParams(1.0, 1.0).conjugate_exponent_inverse() == 0.0);
  CHECK(GrowthParams(2.0, 1.0).conjugate_exponent_inverse() == 0.5);
  CHECK(GrowthParams(4.0, 1.0).conjugate_exponent_inverse() == 0.75);
}

TEST_CASE("norm bracket on polynomials with known suprema") {
  const GrowthParams p11(1.0, 1.0);

  CHECK(norm_bracket(TaylorPoly(1, 4), p11).lower == 0.0);
  CHECK(norm_bracket(TaylorPoly(1, 4), p11).upper == 0.0);

  const TaylorPoly c = monomial(2, MultiIndex::zeros(2), Complex(3.0, 4.0), 3);
  const NormBracket cb = norm_bracket(c, p11);
  CHECK(cb.lower == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(cb.upper == doctest::Approx(5.0).epsilon(1e-12));

  // sup (1+r)^2 e^-r = 4/e at r = 1; positive coefficients make both ends tight
  TaylorPoly sq(1, 4);
  sq.set_coeff(MultiIndex({0}), 1.0);
  sq.set_coeff(MultiIndex({1}), 2.0);
  sq.set_coeff(MultiIndex({2}), 1.0);
  const NormBracket sb = norm_bracket(sq, p11);
  const double four_over_e = 4.0 / kE;
  CHECK(sb.lower == doctest::Approx(four_over_e).epsilon(1e-6));
  CHECK(sb.upper == doctest::Approx(four_over_e).epsilon(1e-6));
  CHECK(sb.lower <= sb.upper * (1.0 + 1e-12));

  const NormBracket zb = norm_bracket(monomial(1, MultiIndex({3}), 1.0, 8), p11);
  const double cube = 27.0 / (kE * kE * kE);
  CHECK(zb.lower == doctest::Approx(cube).epsilon(1e-6));
  CHECK(zb.upper == doctest::Approx(cube).epsilon(1e-6));
}

TEST_CASE("truncated exponential sits at norm one") {
  const GrowthParams p11(1.0, 1.0);
  const NormBracket b = norm_bracket(truncated_exp(40), p11);
  CHECK(b.upper <= 1.0 + 1e-9);
  CHECK(b.lower >= 1.0 - 1e-9);
}

TEST_CASE("monomial brackets match the closed form on both ends") {
  for (const int k : {0, 1, 4, 9, 12}) {
    for (const double order : {0.5, 1.0, 2.0, 3.0}) {
      for (const double type : {0.5, 1.0, 2.0}) {
        const GrowthParams params(order, type);
        const double expected = monomial_norm(k, params);
        const NormBracket b = norm_bracket(monomial(1, MultiIndex({k}), 1.0, 14), params);
        CHECK(b.lower == doctest::Approx(expected).epsilon(1e-6));
        CHECK(b.upper == doctest::Approx(expected).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("upper end dominates pointwise values, lower end stays below upper") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 6; ++rep) {
    const int dim = 1 + rep % 2;
    const TaylorPoly f = random_poly(dim, 10, 12, rng);
    const GrowthParams params(rep % 2 ? 2.0 : 1.0, 1.0);
    const NormBracket b = norm_bracket(f, params);
    CHECK(b.lower <= b.upper * (1.0 + 1e-12));
    for (int pt = 0; pt < 50; ++pt) {
      std::vector<Complex> z(static_cast<size_t>(dim));
      double norm2 = 0.0;
      for (auto& zi : z) {
        zi = {2.0 * u(rng), 2.0 * u(rng)};
        norm2 += std::norm(zi);
      }
      const double witness =
          std::abs(eval(f, z)) * std::exp(-params.type * std::pow(std::sqrt(norm2), params.order));
      CHECK(witness <= b.upper * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("norm upper is submultiplicative across types") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 5; ++rep) {
    const int dim = 1 + rep % 2;
    const TaylorPoly f = random_poly(dim, 8, 16, rng);
    const TaylorPoly g = random_poly(dim, 8, 16, rng);
    const GrowthParams pf(1.0, 1.0);
    const GrowthParams pg(1.0, 0.5);
    const GrowthParams psum(1.0, 1.5);
    const double lhs = norm_upper(mul(f, g), psum);
    const double rhs = norm_upper(f, pf) * norm_upper(g, pg);
    CHECK(lhs <= rhs * (1.0 + 1e-9));
  }
}

TEST_CASE("monomial norm bound closed form") {
  CHECK(monomial_norm_bound(MultiIndex::zeros(2), GrowthParams(1.0, 1.0)) == 1.0);
  CHECK(monomial_norm_bound(MultiIndex({2}), GrowthParams(2.0, 1.0)) ==
        doctest::Approx(1.0 / kE).epsilon(1e-12));
  CHECK(monomial_norm_bound(MultiIndex({3}), GrowthParams(1.0, 1.0)) ==
        doctest::Approx(27.0 / (kE * kE * kE)).epsilon(1e-12));

  // tight in one variable: the scan reproduces the bound
  for (const int k : {1, 3, 7}) {
    const GrowthParams params(2.0, 0.5);
    CHECK(norm_upper(monomial(1, MultiIndex({k}), 1.0, 10), params) ==
          doctest::Approx(monomial_norm_bound(MultiIndex({k}), params)).epsilon(1e-6));
  }
}

TEST_CASE("derivative norm bound: pinned value and factorization inequality") {
  CHECK(derivative_norm_bound(MultiIndex::zeros(1), GrowthParams(1.0, 1.0), 1) == 1.0);
  CHECK(derivative_norm_bound(MultiIndex({2}), GrowthParams(1.0, 1.0), 1) ==
        doctest::Approx(2.0 * kE * kE).epsilon(1e-12));

  // d/dz of the truncated exponential has norm about 1, far below the bound 2e
  const GrowthParams p11(1.0, 1.0);
  const TaylorPoly f = truncated_exp(40);
  const double df_norm = norm_upper(derivative(f, MultiIndex({1})), p11);
  CHECK(df_norm <= derivative_norm_bound(MultiIndex({1}), p11, 1) * norm_upper(f, p11));

  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 6; ++rep) {
    const int dim = 1 + rep % 2;
    const TaylorPoly g = random_poly(dim, 12, 12, rng);
    for (const auto& [order, type] : std::vector<std::pair<double, double>>{{1.0, 1.0},
                                                                            {2.0, 0.5}}) {
      const GrowthParams params(order, type);
      const GrowthParams shifted(order, params.subadditivity_factor() * type);
      const double base = norm_upper(g, params);
      for (int k = 0; k <= 4; ++k) {
        for (const MultiIndex& a : enumerate_degree(dim, k)) {
          const double lhs = norm_upper(derivative(g, a), shifted);
          const double bound = derivative_norm_bound(a, params, dim);
          CHECK(lhs <= bound * base * (1.0 + 1e-9));
        }
      }
    }
  }
}

TEST_CASE("weight-family comparison factors: pinned values and ordering") {
  const EquivalenceFactors f = equivalence_factors(MultiIndex({1, 1}), GrowthParams(2.0, 1.0), 2);
  CHECK(f.low == doctest::Approx(2.0 / (4.0 * kE)).epsilon(1e-12));
  CHECK(f.mid == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(f.high == doctest::Approx(2.0).epsilon(1e-12));

  const EquivalenceFactors g = equivalence_factors(MultiIndex({1}), GrowthParams(1.0, 1.0), 1);
  CHECK(g.low == doctest::Approx(1.0 / kE).epsilon(1e-12));
  CHECK(g.mid == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g.high == doctest::Approx(1.0).epsilon(1e-12));

  const EquivalenceFactors z = equivalence_factors(MultiIndex::zeros(2), GrowthParams(2.0, 1.0), 2);
  CHECK(z.low == 1.0);
  CHECK(z.high == 1.0);

  for (const double order : {0.5, 1.0, 2.0, 3.0}) {
    const GrowthParams params(order, 1.0);
    for (int dim = 1; dim <= 3; ++dim) {
      for (int k = 1; k <= 20; ++k) {
        for (const MultiIndex& a : enumerate_degree(dim, k)) {
          const EquivalenceFactors e = equivalence_factors(a, params, dim);
          CHECK(e.low <= e.mid * (1.0 + 1e-12));
          CHECK(e.mid <= e.high * (1.0 + 1e-12));
        }
      }
    }
  }
}

TEST_CASE("decay check on the translation family matches the closed-form constants") {
  std::vector<Complex> shift{{1.0, 0.0}};
  const OperatorSymbol op = translation_symbol(shift, 16, 32);
  const std::vector<double> eps_grid{1.0, 0.5, 0.25};
  const ClassVerdict v = check_condition(op, 1.0, ClassMode::normal, Condition::III, eps_grid,
                                         default_scale_grid());
  REQUIRE(v.status == VerdictStatus::pass);
  REQUIRE(v.certificates.size() == 3);

  // C(eps) = max_k eps^-k / k! over the stored orders
  for (size_t i = 0; i < eps_grid.size(); ++i) {
    double expected = 0.0;
    double fact = 1.0;
    for (int k = 0; k <= 16; ++k) {
      if (k > 0) fact *= static_cast<double>(k);
      expected = std::max(expected, std::pow(eps_grid[i], -k) / fact);
    }
    CHECK(v.certificates[i].eps == eps_grid[i]);
    CHECK(v.certificates[i].status == VerdictStatus::pass);
    CHECK(v.certificates[i].constant == doctest::Approx(expected).epsilon(1e-9));

    double max_margin = 0.0;
    for (double m : v.certificates[i].margin_by_degree) max_margin = std::max(max_margin, m);
    CHECK(max_margin == doctest::Approx(v.certificates[i].constant).epsilon(1e-9));
  }
  CHECK(v.certificates[0].constant == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(v.certificates[1].constant == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(v.certificates[2].constant == doctest::Approx(32.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("sup-form and norm-form variants agree") {
  std::vector<Complex> shift{{1.0, 0.0}};
  const OperatorSymbol tr = translation_symbol(shift, 16, 32);

  const ClassVerdict v1 =
      check_condition(tr, 1.0, ClassMode::normal, Condition::I, default_eps_grid(),
                      default_scale_grid());
  const ClassVerdict v3 =
      check_condition(tr, 1.0, ClassMode::normal, Condition::III, default_eps_grid(),
                      default_scale_grid());
  CHECK(v1.status == v3.status);
  REQUIRE(v1.certificates.size() == v3.certificates.size());
  for (size_t i = 0; i < v1.certificates.size(); ++i)
    CHECK(v1.certificates[i].constant ==
          doctest::Approx(v3.certificates[i].constant).epsilon(1e-12));

  const ClassVerdict v2 =
      check_condition(tr, 1.0, ClassMode::normal, Condition::II, default_eps_grid(),
                      default_scale_grid());
  const ClassVerdict v4 =
      check_condition(tr, 1.0, ClassMode::normal, Condition::IV, default_eps_grid(),
                      default_scale_grid());
  CHECK(v2.status == v4.status);
  CHECK(v2.status == VerdictStatus::pass);

  // rapidly growing family: constants (k!)^2 defeat every weight at order 1
  OperatorSymbol bad(1, 12);
  double fact = 1.0;
  for (int k = 0; k <= 12; ++k) {
    if (k > 0) fact *= static_cast<double>(k);
    bad.set_term(MultiIndex({k}), monomial(1, MultiIndex({0}), fact * fact, 4));
  }
  for (const Condition c : {Condition::I, Condition::II, Condition::III, Condition::IV}) {
    const ClassVerdict vb = check_condition(bad, 1.0, ClassMode::normal, c, default_eps_grid(),
                                            default_scale_grid());
    CHECK(vb.status == VerdictStatus::fail);
  }
}

TEST_CASE("minimal-mode verdicts on the model families") {
  std::vector<Complex> shift{{1.0, 0.0}};
  const OperatorSymbol tr = translation_symbol(shift, 16, 32);
  const ClassVerdict vt = check_condition(tr, 1.0, ClassMode::minimal, Condition::IV,
                                          default_eps_grid(), default_scale_grid());
  CHECK(vt.status == VerdictStatus::pass);

  const OperatorSymbol dil = dilation_symbol(1.0, 1, 12, 24);
  const ClassVerdict vd = check_condition(dil, 2.0, ClassMode::minimal, Condition::IV,
                                          default_eps_grid(), default_scale_grid());
  CHECK(vd.status == VerdictStatus::pass);
}

TEST_CASE("degenerate inputs to the decay check") {
  const OperatorSymbol empty(1, 8);
  const ClassVerdict v = check_condition(empty, 1.0, ClassMode::normal, Condition::IV,
                                         default_eps_grid(), default_scale_grid());
  CHECK(v.status == VerdictStatus::pass);
  for (const auto& cert : v.certificates) CHECK(cert.constant == 0.0);

  std::vector<Complex> shift{{1.0, 0.0}};
  const OperatorSymbol tr = translation_symbol(shift, 8, 16);
  CHECK_THROWS_AS(check_condition(tr, 1.0, ClassMode::normal, Condition::IV, {},
                                  default_scale_grid()),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_condition(tr, 1.0, ClassMode::normal, Condition::IV, default_eps_grid(),
                                  {}),
                  std::invalid_argument);
}
