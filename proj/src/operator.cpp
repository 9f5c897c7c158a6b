#include "entireop/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entireop {

OperatorSymbol::OperatorSymbol(int dim, int max_order) : dim_(dim), max_order_(max_order) {
  if (dim < 0) throw std::invalid_argument("operator dimension must be nonnegative");
  if (max_order < 0) throw std::invalid_argument("operator max_order must be nonnegative");
}

void OperatorSymbol::set_term(const MultiIndex& a, TaylorPoly coeff) {
  if (a.dim() != dim_) throw std::invalid_argument("operator term index dimension mismatch");
  if (coeff.dim() != dim_)
    throw std::invalid_argument("operator coefficient dimension mismatch");
  if (a.degree() > max_order_)
    throw std::invalid_argument("operator term order exceeds max_order");
  if (coeff.is_zero()) {
    terms_.erase(a);
  } else {
    terms_.insert_or_assign(a, std::move(coeff));
  }
}

const TaylorPoly* OperatorSymbol::term(const MultiIndex& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? nullptr : &it->second;
}

TaylorPoly apply_truncated(const OperatorSymbol& op, const TaylorPoly& f) {
  return apply(op, f, GrowthParams(1.0, 1.0), nullptr).result;
}

ApplyReport apply(const OperatorSymbol& op, const TaylorPoly& f, const GrowthParams& params,
                  const ClassVerdict* certificate) {
  if (op.dim() != f.dim())
    throw std::invalid_argument("operator and function dimension mismatch");

  std::vector<TaylorPoly> pieces;
  int result_trunc = std::numeric_limits<int>::max();
  int used = 0;
  for (const auto& [a, coeff] : op.terms()) {
    TaylorPoly df = derivative(f, a);
    if (df.is_zero()) continue;
    TaylorPoly piece = mul(coeff, df);
    result_trunc = std::min(result_trunc, piece.trunc());
    pieces.push_back(std::move(piece));
    ++used;
  }
  if (pieces.empty()) result_trunc = f.trunc();

  ApplyReport report{TaylorPoly(f.dim(), result_trunc), used, std::nullopt, std::nullopt};
  for (const TaylorPoly& piece : pieces) {
    for (const auto& [mu, c] : piece.coeffs()) {
      if (mu.degree() <= result_trunc) report.result.add_coeff(mu, c);
    }
  }

  if (certificate != nullptr) {
    if (certificate->status != VerdictStatus::pass)
      throw std::invalid_argument("apply requires a pass certificate");
    const double n_factor = 4.0 * std::sqrt(static_cast<double>(std::max(op.dim(), 1)));
    const double per_eps =
        n_factor * std::pow(std::exp(1.0) * params.type * params.order, 1.0 / params.order);
    const double log_input_norm = log_norm_upper(f, params);

    bool found = false;
    double best_log_tail = 0.0;
    TailParams best{};
    for (const ConditionCertificate& cert : certificate->certificates) {
      // in minimal mode the certificate's scale plays the geometric role and
      // its eps is the coefficient norm type
      const double geom = certificate->mode == ClassMode::normal ? cert.eps : cert.scale;
      const double type_shift = certificate->mode == ClassMode::normal ? cert.scale : cert.eps;
      const double ratio = per_eps * geom;
      if (!(ratio < 1.0)) continue;
      const double log_tail = (op.dim() - 1) * std::log(2.0) + std::log(cert.constant) +
                              (op.max_order() + 1) * std::log(ratio) - std::log1p(-ratio) +
                              log_input_norm;
      if (!found || log_tail < best_log_tail) {
        found = true;
        best_log_tail = log_tail;
        best = TailParams{cert.eps,
                          cert.scale,
                          cert.constant,
                          params.type,
                          type_shift + params.subadditivity_factor() * params.type,
                          ratio};
      }
    }
    if (!found)
      throw CertificateError("certificate too weak at this type: geometric ratio >= 1 for every certified eps");
    report.tail_bound = std::isinf(std::exp(best_log_tail)) ? std::numeric_limits<double>::max()
                                                            : std::exp(best_log_tail);
    report.tail_params = best;
  }
  return report;
}

OperatorSymbol add(const OperatorSymbol& p, const OperatorSymbol& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("operator dimension mismatch");
  OperatorSymbol out(p.dim(), std::max(p.max_order(), q.max_order()));
  for (const auto& [a, coeff] : p.terms()) out.set_term(a, coeff);
  for (const auto& [a, coeff] : q.terms()) {
    const TaylorPoly* existing = out.term(a);
    out.set_term(a, existing ? add(*existing, coeff) : coeff);
  }
  return out;
}

OperatorSymbol compose(const OperatorSymbol& p, const OperatorSymbol& q, int result_max_order) {
  if (p.dim() != q.dim()) throw std::invalid_argument("operator dimension mismatch");
  OperatorSymbol out(p.dim(), result_max_order);
  std::map<MultiIndex, TaylorPoly, GrlexLess> acc;
  for (const auto& [a, ca] : p.terms()) {
    for (const auto& d : enumerate_below(a)) {
      const MultiIndex rest = sub(a, d);
      const double weight = to_double(binomial(a, d));
      for (const auto& [e, be] : q.terms()) {
        const MultiIndex target = add(rest, e);
        if (target.degree() > result_max_order) continue;
        TaylorPoly db = derivative(be, d);
        if (db.is_zero()) continue;
        TaylorPoly piece = scale(mul(ca, db), weight);
        auto it = acc.find(target);
        if (it == acc.end()) {
          acc.emplace(target, std::move(piece));
        } else {
          it->second = add(it->second, piece);
        }
      }
    }
  }
  for (auto& [target, coeff] : acc) out.set_term(target, std::move(coeff));
  return out;
}

ClassVerdict classify(const OperatorSymbol& op, double order, ClassMode mode) {
  return check_condition(op, order, mode, Condition::IV, default_eps_grid(),
                         default_scale_grid());
}

double max_symbol_diff(const OperatorSymbol& p, const OperatorSymbol& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("operator dimension mismatch");
  double worst = 0.0;
  auto scan = [&](const OperatorSymbol& x, const OperatorSymbol& y) {
    for (const auto& [a, coeff] : x.terms()) {
      const TaylorPoly* other = y.term(a);
      for (const auto& [mu, c] : coeff.coeffs()) {
        const Complex oc = other ? other->coeff(mu) : Complex(0.0, 0.0);
        worst = std::max(worst, std::abs(c - oc));
      }
    }
  };
  scan(p, q);
  scan(q, p);
  return worst;
}

}  // namespace entireop
