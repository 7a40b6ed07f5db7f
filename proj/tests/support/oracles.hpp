#ifndef SKEWFORMS_TESTS_ORACLES_HPP
#define SKEWFORMS_TESTS_ORACLES_HPP

// Independent numeric reference implementations. None of them calls the
// library's exterior derivative, wedge, star or quadrature; they only read
// coefficients and evaluate them at points.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "generators.hpp"
#include "skewforms/forms.hpp"

namespace oracle {

using skewforms::DifferentialForm;
using skewforms::IndexTuple;

/// Components of a form at a point, keyed by sorted tuples.
using Components = std::map<IndexTuple, double>;

/// Parity of an arbitrary index sequence: +1, -1, or 0 on a repeat.
inline int levi_civita(const std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (idx[i] == idx[j]) return 0;
      if (idx[i] > idx[j]) sign = -sign;
    }
  }
  return sign;
}

/// Fully antisymmetric component A(i1..ip) for any index order.
inline double component(const Components& c, std::vector<int> idx) {
  const int s = levi_civita(idx);
  if (s == 0) return 0.0;
  std::sort(idx.begin(), idx.end());
  auto it = c.find(idx);
  return it == c.end() ? 0.0 : s * it->second;
}

inline Components evaluate(const DifferentialForm& a, const std::vector<double>& p) {
  Components out;
  for (const auto& [t, c] : a.terms()) out[t] = skewforms::evaluate(c, a.vars(), p);
  return out;
}

inline double factorial(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

/// (a ^ b)_J = 1/(p! q!) sum over permutations s of J of sgn(s) A(s_1..s_p) B(s_p+1..).
inline Components naive_wedge(const Components& a, int p, const Components& b, int q, int n) {
  Components out;
  if (p + q > n) return out;
  for (const auto& J : gen::tuples(n, p + q)) {
    std::vector<int> perm(J.begin(), J.end());
    double total = 0.0;
    do {
      const std::vector<int> left(perm.begin(), perm.begin() + p);
      const std::vector<int> right(perm.begin() + p, perm.end());
      total += levi_civita(perm) * component(a, left) * component(b, right);
    } while (std::next_permutation(perm.begin(), perm.end()));
    total /= factorial(p) * factorial(q);
    if (total != 0.0) out[J] = total;
  }
  return out;
}

/// Hodge star through the Levi-Civita symbol with indices raised by a
/// constant diagonal metric: (*a)_J = 1/p! sum_I a^I eps_{I J}.
inline Components levi_civita_star(const Components& a, int p, const std::vector<int>& signature) {
  const int n = static_cast<int>(signature.size());
  Components out;
  for (const auto& J : gen::tuples(n, n - p)) {
    double total = 0.0;
    std::vector<int> I(static_cast<std::size_t>(p), 1);
    // Every ordered p-tuple over 1..n, like an odometer.
    while (true) {
      std::vector<int> full(I);
      full.insert(full.end(), J.begin(), J.end());
      const int eps = levi_civita(full);
      if (eps != 0) {
        double raised = component(a, I);
        for (int i : I) raised *= signature[static_cast<std::size_t>(i - 1)];
        total += eps * raised;
      }
      int k = p - 1;
      while (k >= 0 && I[static_cast<std::size_t>(k)] == n) I[static_cast<std::size_t>(k--)] = 1;
      if (k < 0) break;
      ++I[static_cast<std::size_t>(k)];
    }
    total /= factorial(p);
    if (total != 0.0) out[J] = total;
  }
  return out;
}

/// Central difference of f along coordinate i.
inline double central_difference(const std::function<double(const std::vector<double>&)>& f, std::vector<double> p,
                                 int i, double h = 1e-5) {
  const double x = p[static_cast<std::size_t>(i)];
  p[static_cast<std::size_t>(i)] = x + h;
  const double fp = f(p);
  p[static_cast<std::size_t>(i)] = x - h;
  const double fm = f(p);
  return (fp - fm) / (2 * h);
}

/// (da)_J = sum_k (-1)^k d a_{J without j_k} / dx^{j_k}, by central differences.
inline Components fd_exterior_derivative(const DifferentialForm& a, const std::vector<double>& p, double h = 1e-5) {
  const int n = a.dimension();
  const int deg = a.degree();
  Components out;
  if (deg >= n) return out;
  for (const auto& J : gen::tuples(n, deg + 1)) {
    double total = 0.0;
    for (std::size_t k = 0; k < J.size(); ++k) {
      IndexTuple rest;
      for (std::size_t m = 0; m < J.size(); ++m) {
        if (m != k) rest.push_back(J[m]);
      }
      const skewforms::Expression c = a.coefficient(rest);
      if (c.is_zero_literal()) continue;
      auto f = [&](const std::vector<double>& q) { return skewforms::evaluate(c, a.vars(), q); };
      const double sign = k % 2 == 0 ? 1.0 : -1.0;
      total += sign * central_difference(f, p, J[k] - 1, h);
    }
    out[J] = total;
  }
  return out;
}

/// Exact integral of sum c x^a y^b over [0,1]^2 after differentiating: returns
/// the exact area integral of d(P dx + Q dy) = (Q_x - P_y) dx^dy.
inline skewforms::Rational exact_unit_square_curl(const std::vector<gen::Monomial>& P,
                                                  const std::vector<gen::Monomial>& Q) {
  using skewforms::Rational;
  Rational total = 0;
  // int_0^1 int_0^1 d/dx (c x^a y^b) = c * [a > 0] * 1/(b+1)
  for (const auto& m : Q) {
    if (m.exps[0] > 0) total += m.coef / Rational(m.exps[1] + 1);
  }
  for (const auto& m : P) {
    if (m.exps[1] > 0) total -= m.coef / Rational(m.exps[0] + 1);
  }
  return total;
}

/// Largest relative deviation max |u - v| / max(1, |u|) over the union of keys.
inline double max_relative_gap(const Components& u, const Components& v) {
  double worst = 0.0;
  auto check = [&](const IndexTuple& t) {
    const double a = u.count(t) ? u.at(t) : 0.0;
    const double b = v.count(t) ? v.at(t) : 0.0;
    worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
  };
  for (const auto& [t, _] : u) check(t);
  for (const auto& [t, _] : v) check(t);
  return worst;
}

}  // namespace oracle

#endif  // SKEWFORMS_TESTS_ORACLES_HPP
