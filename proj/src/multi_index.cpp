#include "entireop/multi_index.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace entireop {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_) {
    if (e < 0) throw std::invalid_argument("multi-index entry must be nonnegative");
  }
}

MultiIndex MultiIndex::zeros(int dim) {
  if (dim < 0) throw std::invalid_argument("multi-index dimension must be nonnegative");
  return MultiIndex(std::vector<int>(static_cast<size_t>(dim), 0));
}

MultiIndex MultiIndex::unit(int dim, int axis) {
  if (axis < 0 || axis >= dim) throw std::invalid_argument("unit axis out of range");
  std::vector<int> e(static_cast<size_t>(dim), 0);
  e[static_cast<size_t>(axis)] = 1;
  return MultiIndex(std::move(e));
}

int MultiIndex::degree() const {
  return std::accumulate(entries_.begin(), entries_.end(), 0);
}

bool GrlexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  const int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  // same degree: first differing entry decides, larger entry sorts earlier
  for (int k = 0; k < a.dim(); ++k) {
    if (a[k] != b[k]) return a[k] > b[k];
  }
  return false;
}

BigInt factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of negative integer");
  BigInt r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

BigInt factorial(const MultiIndex& a) {
  BigInt r = 1;
  for (int k = 0; k < a.dim(); ++k) r *= factorial(a[k]);
  return r;
}

bool leq(const MultiIndex& b, const MultiIndex& a) {
  if (a.dim() != b.dim()) throw std::invalid_argument("multi-index dimension mismatch");
  for (int k = 0; k < a.dim(); ++k) {
    if (b[k] > a[k]) return false;
  }
  return true;
}

BigInt binomial(const MultiIndex& a, const MultiIndex& b) {
  if (!leq(b, a)) throw std::invalid_argument("binomial requires b <= a componentwise");
  BigInt r = 1;
  for (int k = 0; k < a.dim(); ++k) {
    // binom(a_k, b_k) computed multiplicatively, exact at every step
    BigInt c = 1;
    for (int j = 1; j <= b[k]; ++j) {
      c *= (a[k] - b[k] + j);
      c /= j;
    }
    r *= c;
  }
  return r;
}

MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("multi-index dimension mismatch");
  std::vector<int> e(static_cast<size_t>(a.dim()));
  for (int k = 0; k < a.dim(); ++k) e[static_cast<size_t>(k)] = a[k] + b[k];
  return MultiIndex(std::move(e));
}

MultiIndex sub(const MultiIndex& a, const MultiIndex& b) {
  if (!leq(b, a)) throw std::invalid_argument("multi-index subtraction requires b <= a");
  std::vector<int> e(static_cast<size_t>(a.dim()));
  for (int k = 0; k < a.dim(); ++k) e[static_cast<size_t>(k)] = a[k] - b[k];
  return MultiIndex(std::move(e));
}

namespace {

void enumerate_degree_rec(int dim, int k, std::vector<int>& prefix,
                          std::vector<MultiIndex>& out) {
  if (dim == 1) {
    prefix.push_back(k);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int e = k; e >= 0; --e) {
    prefix.push_back(e);
    enumerate_degree_rec(dim - 1, k - e, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_degree(int dim, int k) {
  if (dim <= 0) throw std::invalid_argument("enumerate_degree requires dim >= 1");
  if (k < 0) throw std::invalid_argument("enumerate_degree requires k >= 0");
  std::vector<MultiIndex> out;
  std::vector<int> prefix;
  prefix.reserve(static_cast<size_t>(dim));
  enumerate_degree_rec(dim, k, prefix, out);
  return out;
}

std::vector<MultiIndex> enumerate_below(const MultiIndex& a) {
  std::vector<MultiIndex> out;
  std::vector<int> cur(static_cast<size_t>(a.dim()), 0);
  // odometer over the box [0, a_0] x ... x [0, a_{n-1}]
  while (true) {
    out.emplace_back(cur);
    int k = a.dim() - 1;
    while (k >= 0 && cur[static_cast<size_t>(k)] == a[k]) {
      cur[static_cast<size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
    ++cur[static_cast<size_t>(k)];
  }
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

double to_double(const BigInt& v) { return v.convert_to<double>(); }

}  // namespace entireop
