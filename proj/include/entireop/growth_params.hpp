#pragma once

#include <cmath>
#include <stdexcept>

namespace entireop {

// Exponential growth scale for entire functions: |f(z)| <= M exp(type * |z|^order).
struct GrowthParams {
  double order;  // p > 0
  double type;   // tau > 0

  GrowthParams(double order_, double type_) : order(order_), type(type_) {
    if (!(order > 0.0) || !std::isfinite(order))
      throw std::invalid_argument("growth order must be positive and finite");
    if (!(type > 0.0) || !std::isfinite(type))
      throw std::invalid_argument("growth type must be positive and finite");
  }

  // max(2^(order-1), 1): the factor by which the type dilates when the
  // growth bound is split across a sum |z + w|^order <= ...
  double subadditivity_factor() const {
    return std::max(std::exp2(order - 1.0), 1.0);
  }

  // 1 - 1/order; by convention exactly 0 when order == 1 (the conjugate
  // exponent is infinite there and every x^(1/q) weight degenerates to 1)
  double conjugate_exponent_inverse() const {
    if (order == 1.0) return 0.0;
    return 1.0 - 1.0 / order;
  }
};

}  // namespace entireop
