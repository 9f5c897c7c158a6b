#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <vector>

namespace entireop {

using BigInt = boost::multiprecision::cpp_int;

// Exponent vector for n complex variables. Entries are nonnegative;
// construction validates this. Immutable after construction.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);

  static MultiIndex zeros(int dim);
  static MultiIndex unit(int dim, int axis);

  int dim() const { return static_cast<int>(entries_.size()); }
  int operator[](int k) const { return entries_[static_cast<size_t>(k)]; }
  const std::vector<int>& entries() const { return entries_; }

  // total degree
  int degree() const;

  bool operator==(const MultiIndex&) const = default;

 private:
  std::vector<int> entries_;
};

// Graded lexicographic strict order: lower total degree first; within a
// degree the index with the larger leading entry comes first, so for n=2,
// degree 2 the order is (2,0), (1,1), (0,2).
struct GrlexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

// a! = prod a_k!  (exact)
BigInt factorial(const MultiIndex& a);
BigInt factorial(int n);

// prod binom(a_k, b_k); requires b <= a componentwise
BigInt binomial(const MultiIndex& a, const MultiIndex& b);

// componentwise b_k <= a_k for all k; throws std::invalid_argument on
// dimension mismatch
bool leq(const MultiIndex& b, const MultiIndex& a);

MultiIndex add(const MultiIndex& a, const MultiIndex& b);

// a - b componentwise; requires leq(b, a)
MultiIndex sub(const MultiIndex& a, const MultiIndex& b);

// all indices of total degree exactly k, in graded-lex order;
// size is binom(dim + k - 1, k)
std::vector<MultiIndex> enumerate_degree(int dim, int k);

// all b with b <= a componentwise, in graded-lex order; size prod(a_k + 1)
std::vector<MultiIndex> enumerate_below(const MultiIndex& a);

double to_double(const BigInt& v);

}  // namespace entireop
