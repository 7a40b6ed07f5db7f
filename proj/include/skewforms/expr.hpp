#ifndef SKEWFORMS_EXPR_HPP
#define SKEWFORMS_EXPR_HPP

// Symbolic scalar expressions used as coefficients of differential forms.
//
// Every Expression is kept in canonical form: the smart constructors fold
// constants, flatten and sort sums and products, merge like terms and powers
// of equal bases, and distribute products over sums. Two expressions that
// normalize to the same tree therefore compare equal with operator==.
//
// Constants are exact rationals. The function vocabulary is closed:
// sin, cos, exp and ln.

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace skewforms {

using Rational = mpq_class;

enum class NodeKind : std::uint8_t { Constant, Variable, Sum, Product, Power, Function };
enum class Func : std::uint8_t { Sin, Cos, Exp, Ln };

std::string_view func_name(Func f);
std::optional<Func> func_from_name(std::string_view name);

/// Three-valued result of a zero test.
enum class ZeroVerdict : std::uint8_t { Zero, Nonzero, Unknown };

std::string_view to_string(ZeroVerdict v);

/// Combine verdicts: any nonzero wins, all zero gives zero, otherwise unknown.
ZeroVerdict combine(std::span<const ZeroVerdict> verdicts);

struct Node;

class Expression {
 public:
  Expression();  // the constant 0
  Expression(int value);  // NOLINT(google-explicit-constructor)
  Expression(const Rational& value);  // NOLINT(google-explicit-constructor)

  static Expression constant(const Rational& value);
  static Expression variable(std::string name);
  static Expression sum(std::vector<Expression> terms);
  static Expression product(std::vector<Expression> factors);
  static Expression power(const Expression& base, const Rational& exponent);
  static Expression function(Func f, const Expression& argument);

  NodeKind kind() const;
  bool is_constant() const { return kind() == NodeKind::Constant; }
  bool is_zero_literal() const;
  bool is_one_literal() const;

  /// Valid for Constant nodes.
  const Rational& value() const;
  /// Valid for Variable nodes.
  const std::string& name() const;
  /// Terms of a Sum, factors of a Product.
  std::span<const Expression> operands() const;
  /// Valid for Power nodes.
  const Expression& base() const;
  const Rational& exponent() const;
  /// Valid for Function nodes.
  Func func() const;
  const Expression& argument() const;

  std::string to_string() const;

  friend bool operator==(const Expression& a, const Expression& b);
  friend bool operator!=(const Expression& a, const Expression& b) { return !(a == b); }

 private:
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;

  friend struct Node;
  friend class ExpressionFactory;
};

/// Total order on canonical expressions; also the canonical term order.
int compare(const Expression& a, const Expression& b);

struct ExpressionLess {
  bool operator()(const Expression& a, const Expression& b) const { return compare(a, b) < 0; }
};

Expression operator+(const Expression& a, const Expression& b);
Expression operator-(const Expression& a, const Expression& b);
Expression operator-(const Expression& a);
Expression operator*(const Expression& a, const Expression& b);
/// Throws DomainError when b is the literal zero.
Expression operator/(const Expression& a, const Expression& b);
Expression pow(const Expression& base, const Rational& exponent);
Expression sin(const Expression& e);
Expression cos(const Expression& e);
Expression exp(const Expression& e);
Expression ln(const Expression& e);

/// Ordered list of distinct coordinate names x^1 ... x^n.
class VariableSet {
 public:
  VariableSet() = default;
  /// Throws InvalidArgument on duplicate or empty names.
  explicit VariableSet(std::vector<std::string> names);
  VariableSet(std::initializer_list<const char*> names);

  std::size_t size() const { return names_.size(); }
  int dimension() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  /// 1-based coordinate index.
  const std::string& name(int index) const { return names_.at(static_cast<std::size_t>(index - 1)); }
  Expression coordinate(int index) const { return Expression::variable(name(index)); }
  /// 1-based index of a name, if present.
  std::optional<int> index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name).has_value(); }

  friend bool operator==(const VariableSet&, const VariableSet&) = default;

 private:
  std::vector<std::string> names_;
};

using Bindings = std::map<std::string, double, std::less<>>;

/// Partial derivative without scope checking.
Expression differentiate(const Expression& e, std::string_view var);
/// Partial derivative; throws UnknownVariable when var is not in vars.
Expression differentiate(const Expression& e, const VariableSet& vars, std::string_view var);

/// Throws UnboundVariable or DomainError.
double evaluate(const Expression& e, const Bindings& point);
/// Point coordinates aligned with vars.
double evaluate(const Expression& e, const VariableSet& vars, std::span<const double> point);

/// Rebuilds the tree through the canonicalizing constructors.
Expression simplify(const Expression& e);

Expression substitute(const Expression& e, const std::map<std::string, Expression, std::less<>>& values);

std::set<std::string, std::less<>> free_variables(const Expression& e);
bool depends_on(const Expression& e, std::string_view var);

/// Numerator and denominator over a common denominator. Kernels (variables,
/// function applications, fractional powers) are treated as indeterminates.
std::pair<Expression, Expression> to_rational_function(const Expression& e);

struct ZeroTestOptions {
  int probe_points = 64;
  int max_attempts = 4096;
  double threshold = 1e-9;
  double sample_radius = 2.0;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

/// Zero only when the normal form or the rational-function normal form is
/// the literal 0; nonzero when a random probe finds a witness; else unknown.
ZeroVerdict is_zero(const Expression& e, const ZeroTestOptions& options = {});

/// Exponent of a bare variable factor inside a term (0 when absent).
Rational variable_exponent(const Expression& term, std::string_view var);

}  // namespace skewforms

#endif  // SKEWFORMS_EXPR_HPP
