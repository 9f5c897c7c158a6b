#include "entireop/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace entireop {

BlackBoxOperator as_black_box(const OperatorSymbol& op, int monomial_trunc) {
  int declared = monomial_trunc;
  for (const auto& [a, coeff] : op.terms()) declared = std::min(declared, coeff.trunc());
  BlackBoxOperator box;
  box.dim = op.dim();
  box.declared_trunc = declared;
  box.action = [op, monomial_trunc](const MultiIndex& b) {
    return apply_truncated(op,
                           monomial(op.dim(), b, Complex(1.0, 0.0), monomial_trunc + b.degree()));
  };
  return box;
}

namespace {

// memoized monomial images in graded-lex order up to the given degree
std::map<MultiIndex, TaylorPoly, GrlexLess> tabulate_action(const BlackBoxOperator& box,
                                                            int max_degree) {
  std::map<MultiIndex, TaylorPoly, GrlexLess> images;
  for (int k = 0; k <= max_degree; ++k) {
    for (const MultiIndex& b : enumerate_degree(box.dim, k)) {
      TaylorPoly img = box.action(b);
      if (img.dim() != box.dim)
        throw std::invalid_argument("black box action returned mismatched dimension");
      images.emplace(b, std::move(img));
    }
  }
  return images;
}

TaylorPoly assemble_coefficient(const MultiIndex& a,
                                const std::map<MultiIndex, TaylorPoly, GrlexLess>& images,
                                int dim, int coeff_trunc) {
  // accumulate largest |b| first
  std::vector<MultiIndex> below = enumerate_below(a);
  std::sort(below.begin(), below.end(), [](const MultiIndex& x, const MultiIndex& y) {
    if (x.degree() != y.degree()) return x.degree() > y.degree();
    return GrlexLess{}(x, y);
  });
  TaylorPoly acc(dim, coeff_trunc);
  for (const MultiIndex& b : below) {
    const MultiIndex rest = sub(a, b);
    const BigInt denom = factorial(rest) * factorial(b);
    const double sign = rest.degree() % 2 == 0 ? 1.0 : -1.0;
    const double weight = sign / to_double(denom);
    const TaylorPoly& img = images.at(b);
    // z^rest * img, clipped at coeff_trunc
    for (const auto& [mu, c] : img.coeffs()) {
      const MultiIndex target = add(mu, rest);
      if (target.degree() > coeff_trunc) continue;
      acc.add_coeff(target, c * weight);
    }
  }
  return acc;
}

}  // namespace

OperatorSymbol extract_symbol(const BlackBoxOperator& box, int max_order, int coeff_trunc) {
  if (max_order < 0) throw std::invalid_argument("extraction max_order must be nonnegative");
  const int trunc = coeff_trunc < 0 ? box.declared_trunc : coeff_trunc;
  if (trunc < 0) throw std::invalid_argument("extraction coefficient truncation is negative");
  const auto images = tabulate_action(box, max_order);
  OperatorSymbol out(box.dim, max_order);
  for (const auto& [a, unused] : images) {
    (void)unused;
    TaylorPoly coeff = assemble_coefficient(a, images, box.dim, trunc);
    if (!coeff.is_zero()) out.set_term(a, std::move(coeff));
  }
  return out;
}

RoundTripReport verify_roundtrip(const BlackBoxOperator& box, const OperatorSymbol& extracted,
                                 const std::vector<TaylorPoly>& tests, double tol) {
  RoundTripReport report;
  report.tol = tol;
  std::map<MultiIndex, TaylorPoly, GrlexLess> images;
  for (const TaylorPoly& f : tests) {
    RoundTripCase rc;
    if (f.dim() != box.dim) throw std::invalid_argument("round trip test dimension mismatch");
    if (f.max_degree() > extracted.max_order()) {
      rc.covered = false;
      report.cases.push_back(rc);
      continue;
    }
    // path one: extend the monomial action linearly
    int path_trunc = std::numeric_limits<int>::max();
    std::vector<std::pair<const TaylorPoly*, Complex>> pieces;
    for (const auto& [mu, c] : f.coeffs()) {
      auto it = images.find(mu);
      if (it == images.end()) it = images.emplace(mu, box.action(mu)).first;
      pieces.emplace_back(&it->second, c);
      path_trunc = std::min(path_trunc, it->second.trunc());
    }
    if (pieces.empty()) path_trunc = f.trunc();
    TaylorPoly linear(box.dim, path_trunc);
    for (const auto& [img, c] : pieces) {
      for (const auto& [mu, v] : img->coeffs()) {
        if (mu.degree() <= path_trunc) linear.add_coeff(mu, v * c);
      }
    }
    // path two: apply the extracted symbol
    const TaylorPoly applied = apply_truncated(extracted, f);

    const int compare_to = std::min(linear.trunc(), applied.trunc());
    double err = 0.0;
    for (const auto& [mu, c] : linear.coeffs()) {
      if (mu.degree() <= compare_to)
        err = std::max(err, std::abs(c - applied.coeff(mu)));
    }
    for (const auto& [mu, c] : applied.coeffs()) {
      if (mu.degree() <= compare_to)
        err = std::max(err, std::abs(c - linear.coeff(mu)));
    }
    rc.max_error = err;
    report.cases.push_back(rc);
    report.max_error = std::max(report.max_error, err);
  }
  report.pass = report.max_error <= tol;
  return report;
}

bool extraction_uniqueness_probe(const OperatorSymbol& p, const OperatorSymbol& q,
                                 int max_degree) {
  if (p.dim() != q.dim()) throw std::invalid_argument("operator dimension mismatch");
  int coeff_top = 0;
  for (const auto& [a, coeff] : p.terms()) coeff_top = std::max(coeff_top, coeff.max_degree());
  for (const auto& [a, coeff] : q.terms()) coeff_top = std::max(coeff_top, coeff.max_degree());
  const int trunc = max_degree + coeff_top + 1;
  const BlackBoxOperator bp = as_black_box(p, trunc);
  const BlackBoxOperator bq = as_black_box(q, trunc);
  const int shared = std::min(bp.declared_trunc, bq.declared_trunc);
  const OperatorSymbol ep = extract_symbol(bp, max_degree, shared);
  const OperatorSymbol eq = extract_symbol(bq, max_degree, shared);
  return max_symbol_diff(ep, eq) <= 1e-10;
}

}  // namespace entireop
