#include "skewforms/forms.hpp"

#include <algorithm>

#include "skewforms/errors.hpp"

namespace skewforms {

int sort_with_sign(IndexTuple& indices) {
  int sign = 1;
  for (std::size_t i = 1; i < indices.size(); ++i) {
    for (std::size_t j = i; j > 0 && indices[j - 1] > indices[j]; --j) {
      std::swap(indices[j - 1], indices[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < indices.size(); ++i) {
    if (indices[i] == indices[i - 1]) return 0;
  }
  return sign;
}

DifferentialForm::DifferentialForm(VariableSet vars, int degree) : vars_(std::move(vars)), degree_(degree) {
  if (degree < 0 || degree > vars_.dimension()) {
    throw InvalidArgument("form degree " + std::to_string(degree) + " outside 0.." + std::to_string(vars_.dimension()));
  }
}

DifferentialForm DifferentialForm::scalar(VariableSet vars, const Expression& value) {
  DifferentialForm f(std::move(vars), 0);
  f.add_term({}, value);
  return f;
}

DifferentialForm DifferentialForm::monomial(VariableSet vars, IndexTuple indices, const Expression& coefficient) {
  const int n = vars.dimension();
  const int p = static_cast<int>(indices.size());
  DifferentialForm f(std::move(vars), std::min(p, n));
  if (p <= n) f.add_term(std::move(indices), coefficient);
  return f;
}

DifferentialForm DifferentialForm::one_form(VariableSet vars, const std::vector<Expression>& coefficients) {
  if (static_cast<int>(coefficients.size()) != vars.dimension()) {
    throw InvalidArgument("expected " + std::to_string(vars.dimension()) + " coefficients");
  }
  DifferentialForm f(std::move(vars), 1);
  for (std::size_t i = 0; i < coefficients.size(); ++i) f.add_term({static_cast<int>(i + 1)}, coefficients[i]);
  return f;
}

void DifferentialForm::add_term(IndexTuple indices, const Expression& coefficient) {
  if (static_cast<int>(indices.size()) != degree_) {
    throw InvalidArgument("term of degree " + std::to_string(indices.size()) + " added to a " +
                          std::to_string(degree_) + "-form");
  }
  for (int i : indices) {
    if (i < 1 || i > vars_.dimension()) throw InvalidArgument("coordinate index " + std::to_string(i) + " out of range");
  }
  const int sign = sort_with_sign(indices);
  if (sign == 0 || coefficient.is_zero_literal()) return;
  const Expression signed_coefficient = sign > 0 ? coefficient : -coefficient;
  auto it = terms_.find(indices);
  if (it == terms_.end()) {
    terms_.emplace(std::move(indices), signed_coefficient);
    return;
  }
  Expression total = it->second + signed_coefficient;
  if (total.is_zero_literal()) {
    terms_.erase(it);
  } else {
    it->second = total;
  }
}

Expression DifferentialForm::coefficient(const IndexTuple& indices) const {
  auto it = terms_.find(indices);
  return it == terms_.end() ? Expression(0) : it->second;
}

std::string DifferentialForm::basis_name(const IndexTuple& indices) const {
  std::string out;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k > 0) out += '^';
    out += 'd';
    out += vars_.name(indices[k]);
  }
  return out;
}

namespace {

bool negative_coefficient(const Expression& c) {
  if (c.kind() == NodeKind::Constant) return c.value() < 0;
  if (c.kind() == NodeKind::Product && c.operands().front().kind() == NodeKind::Constant) {
    return c.operands().front().value() < 0;
  }
  return false;
}

}  // namespace

std::string DifferentialForm::to_string() const {
  if (terms_.empty()) return "0";
  if (degree_ == 0) return terms_.begin()->second.to_string();
  std::string out;
  bool first = true;
  for (const auto& [indices, c] : terms_) {
    const bool neg = negative_coefficient(c);
    const Expression magnitude = neg ? -c : c;
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    if (!magnitude.is_one_literal()) {
      if (magnitude.kind() == NodeKind::Sum) {
        out += '(' + magnitude.to_string() + ')';
      } else {
        out += magnitude.to_string();
      }
      out += '*';
    }
    out += basis_name(indices);
  }
  return out;
}

bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
  if (a.vars_ != b.vars_) return false;
  if (a.degree_ != b.degree_ && !(a.empty() && b.empty())) return false;
  return a.terms_ == b.terms_;
}

namespace {

void require_same_vars(const DifferentialForm& a, const DifferentialForm& b) {
  if (a.vars() != b.vars()) throw InvalidArgument("forms live over different coordinate sets");
}

DifferentialForm add_forms(const DifferentialForm& a, const DifferentialForm& b, bool subtract) {
  require_same_vars(a, b);
  if (a.degree() != b.degree() && !a.empty() && !b.empty()) {
    throw InvalidArgument("cannot add forms of degree " + std::to_string(a.degree()) + " and " +
                          std::to_string(b.degree()));
  }
  const int degree = a.empty() ? b.degree() : a.degree();
  DifferentialForm out(a.vars(), degree);
  for (const auto& [i, c] : a.terms()) out.add_term(i, c);
  for (const auto& [i, c] : b.terms()) out.add_term(i, subtract ? -c : c);
  return out;
}

}  // namespace

DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b) { return add_forms(a, b, false); }
DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b) { return add_forms(a, b, true); }

DifferentialForm operator-(const DifferentialForm& a) {
  DifferentialForm out(a.vars(), a.degree());
  for (const auto& [i, c] : a.terms()) out.add_term(i, -c);
  return out;
}

DifferentialForm operator*(const Expression& c, const DifferentialForm& a) {
  DifferentialForm out(a.vars(), a.degree());
  for (const auto& [i, coeff] : a.terms()) out.add_term(i, c * coeff);
  return out;
}

ZeroVerdict is_zero(const DifferentialForm& a, const ZeroTestOptions& options) {
  std::vector<ZeroVerdict> verdicts;
  for (const auto& [i, c] : a.terms()) {
    verdicts.push_back(is_zero(c, options));
    if (verdicts.back() == ZeroVerdict::Nonzero) break;
  }
  return combine(verdicts);
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  require_same_vars(a, b);
  const int n = a.dimension();
  const int degree = a.degree() + b.degree();
  if (degree > n) return DifferentialForm(a.vars(), n);
  DifferentialForm out(a.vars(), degree);
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      IndexTuple merged = ia;
      merged.insert(merged.end(), ib.begin(), ib.end());
      out.add_term(std::move(merged), ca * cb);
    }
  }
  return out;
}

DifferentialForm exterior_derivative(const DifferentialForm& a) {
  const int n = a.dimension();
  if (a.degree() >= n) return DifferentialForm(a.vars(), n);
  DifferentialForm out(a.vars(), a.degree() + 1);
  for (const auto& [indices, c] : a.terms()) {
    for (int j = 1; j <= n; ++j) {
      if (std::find(indices.begin(), indices.end(), j) != indices.end()) continue;
      const std::string& name = a.vars().name(j);
      if (!depends_on(c, name)) continue;
      IndexTuple merged{j};
      merged.insert(merged.end(), indices.begin(), indices.end());
      out.add_term(std::move(merged), differentiate(c, name));
    }
  }
  return out;
}

Commutator::Commutator(const DifferentialForm& one_form) : vars_(one_form.vars()) {
  if (one_form.degree() != 1) {
    throw InvalidArgument("commutator needs a 1-form, got degree " + std::to_string(one_form.degree()));
  }
  const int n = vars_.dimension();
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      components_[{a, b}] = differentiate(one_form.coefficient({b}), vars_.name(a)) -
                            differentiate(one_form.coefficient({a}), vars_.name(b));
    }
  }
}

Expression Commutator::component(int a, int b) const {
  if (a == b) return Expression(0);
  if (a > b) return -component(b, a);
  auto it = components_.find({a, b});
  return it == components_.end() ? Expression(0) : it->second;
}

std::string Commutator::label(int a, int b) const {
  const std::string& na = vars_.name(a);
  const std::string& nb = vars_.name(b);
  if (na.size() == 1 && nb.size() == 1) return "K_" + na + nb;
  return "K_" + na + "_" + nb;
}

ZeroVerdict Commutator::is_zero(const ZeroTestOptions& options) const {
  std::vector<ZeroVerdict> verdicts;
  for (const auto& [key, k] : components_) verdicts.push_back(skewforms::is_zero(k, options));
  return combine(verdicts);
}

Commutator commutator(const DifferentialForm& a) { return Commutator(a); }

DifferentialForm pullback(const DifferentialForm& a, const Parameterization& chart) {
  const int n = a.dimension();
  const int m = chart.parameters.dimension();
  if (static_cast<int>(chart.coordinates.size()) != n) {
    throw InvalidArgument("parameterization must give " + std::to_string(n) + " coordinates");
  }
  if (m >= n) throw InvalidArgument("parameterization must use fewer than " + std::to_string(n) + " parameters");
  if (a.degree() > m) return DifferentialForm(chart.parameters, m);

  std::map<std::string, Expression, std::less<>> substitution;
  for (int i = 1; i <= n; ++i) substitution[a.vars().name(i)] = chart.coordinates[static_cast<std::size_t>(i - 1)];

  std::vector<DifferentialForm> differentials;
  for (const auto& x : chart.coordinates) {
    DifferentialForm dx(chart.parameters, std::min(1, m));
    if (m >= 1) {
      for (int k = 1; k <= m; ++k) dx.add_term({k}, differentiate(x, chart.parameters.name(k)));
    }
    differentials.push_back(std::move(dx));
  }

  DifferentialForm out(chart.parameters, a.degree());
  for (const auto& [indices, c] : a.terms()) {
    DifferentialForm piece = DifferentialForm::scalar(chart.parameters, substitute(c, substitution));
    for (int i : indices) piece = wedge(piece, differentials[static_cast<std::size_t>(i - 1)]);
    out = out + piece;
  }
  return out;
}

std::map<IndexTuple, double> evaluate_form(const DifferentialForm& a, std::span<const double> point) {
  std::map<IndexTuple, double> out;
  for (const auto& [indices, c] : a.terms()) out[indices] = evaluate(c, a.vars(), point);
  return out;
}

std::map<IndexTuple, double> evaluate_form(const DifferentialForm& a, const Bindings& point) {
  std::map<IndexTuple, double> out;
  for (const auto& [indices, c] : a.terms()) out[indices] = evaluate(c, point);
  return out;
}

}  // namespace skewforms
