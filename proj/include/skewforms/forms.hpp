#ifndef SKEWFORMS_FORMS_HPP
#define SKEWFORMS_FORMS_HPP

// Exterior algebra over a coordinate chart: sparse skew-symmetric forms keyed
// by strictly increasing index tuples, the wedge product, the exterior
// derivative, commutators of 1-forms and pullbacks along parameterizations.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "skewforms/expr.hpp"

namespace skewforms {

/// Strictly increasing 1-based coordinate indices, one per basis differential.
using IndexTuple = std::vector<int>;

/// Sorts indices in place, returning the permutation sign, or 0 when an index
/// repeats (the monomial vanishes).
int sort_with_sign(IndexTuple& indices);

class DifferentialForm {
 public:
  using Terms = std::map<IndexTuple, Expression>;

  DifferentialForm() = default;
  /// The zero form of the given degree. Throws InvalidArgument unless
  /// 0 <= degree <= n.
  DifferentialForm(VariableSet vars, int degree);

  static DifferentialForm scalar(VariableSet vars, const Expression& value);
  /// coefficient * dx^{i1} ^ ... ^ dx^{ip}; unsorted indices are resorted and
  /// the sign folded into the coefficient.
  static DifferentialForm monomial(VariableSet vars, IndexTuple indices, const Expression& coefficient = Expression(1));
  /// Sum of a_i dx^i.
  static DifferentialForm one_form(VariableSet vars, const std::vector<Expression>& coefficients);

  /// Adds coefficient * dx^I, I given in any order.
  void add_term(IndexTuple indices, const Expression& coefficient);

  const VariableSet& vars() const { return vars_; }
  int degree() const { return degree_; }
  int dimension() const { return vars_.dimension(); }
  const Terms& terms() const { return terms_; }
  /// Coefficient of a sorted tuple; zero when absent.
  Expression coefficient(const IndexTuple& indices) const;
  /// Structurally zero: no stored coefficient.
  bool empty() const { return terms_.empty(); }

  /// Renders e.g. "2*x*dx + 2*y*dy", "-x*dx^dy", or "0".
  std::string to_string() const;
  std::string basis_name(const IndexTuple& indices) const;

  /// Zero forms of any degree compare equal to each other.
  friend bool operator==(const DifferentialForm& a, const DifferentialForm& b);
  friend bool operator!=(const DifferentialForm& a, const DifferentialForm& b) { return !(a == b); }

 private:
  VariableSet vars_;
  int degree_ = 0;
  Terms terms_;
};

DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm operator-(const DifferentialForm& a);
DifferentialForm operator*(const Expression& c, const DifferentialForm& a);

/// Zero-test every coefficient and combine the verdicts.
ZeroVerdict is_zero(const DifferentialForm& a, const ZeroTestOptions& options = {});

/// Degree p+q; a result of degree > n is the zero form of degree n.
DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);

/// Degree p+1; the derivative of an n-form is the zero n-form.
DifferentialForm exterior_derivative(const DifferentialForm& a);

/// K_ab = d a_b/dx^a - d a_a/dx^b for every pair a < b of a 1-form.
class Commutator {
 public:
  Commutator() = default;
  explicit Commutator(const DifferentialForm& one_form);

  const VariableSet& vars() const { return vars_; }
  /// Stored for a < b only.
  const std::map<std::pair<int, int>, Expression>& components() const { return components_; }
  /// Antisymmetric accessor; K(a,a) is zero.
  Expression component(int a, int b) const;
  /// Label such as "K_xy" or "K_x1_x2".
  std::string label(int a, int b) const;
  ZeroVerdict is_zero(const ZeroTestOptions& options = {}) const;

 private:
  VariableSet vars_;
  std::map<std::pair<int, int>, Expression> components_;
};

/// Throws InvalidArgument unless a has degree 1.
Commutator commutator(const DifferentialForm& a);

/// Coordinates x^i(t^1..t^m) of a chart over m parameters.
struct Parameterization {
  VariableSet parameters;
  std::vector<Expression> coordinates;
};

/// Substitutes the chart and replaces dx^i by sum_k dx^i/dt^k dt^k. The
/// result lives over the parameters; a degree above m collapses to the zero
/// m-form. Throws InvalidArgument when the chart has n or more parameters or
/// the wrong number of coordinates.
DifferentialForm pullback(const DifferentialForm& a, const Parameterization& chart);

/// Numeric value of every stored coefficient at a point aligned with vars.
std::map<IndexTuple, double> evaluate_form(const DifferentialForm& a, std::span<const double> point);
std::map<IndexTuple, double> evaluate_form(const DifferentialForm& a, const Bindings& point);

}  // namespace skewforms

#endif  // SKEWFORMS_FORMS_HPP
