#ifndef SKEWFORMS_DSL_HPP
#define SKEWFORMS_DSL_HPP

// The .forms text format.
//
//   # comment
//   vars x, y, z
//   metric (1, 1, -1)
//   scalar f = x^2 - y^2
//   form w = y*dx ^ dz + exp(x)*dy
//   form t = d(f)
//   relation r: d(f) = w
//   balance b: A = (y^2, x*y, 0), psi = x*y^2
//
// Statements end at a newline or ';'. A line break directly after an
// operator, a comma or inside parentheses continues the statement.
//
// '^' is the wedge product when either operand is a form of degree >= 1 and
// a power otherwise; the exponent of a power must be a rational constant.
// It binds tighter than '*', so x*dx^dy means x*(dx^dy). 'd(...)' is the
// exterior derivative and 'dx' the basis differential of the coordinate x.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "skewforms/duality.hpp"
#include "skewforms/forms.hpp"

namespace skewforms {

struct FormDecl {
  std::string name;
  DifferentialForm form;
  friend bool operator==(const FormDecl&, const FormDecl&) = default;
};

struct ScalarDecl {
  std::string name;
  Expression value;
  friend bool operator==(const ScalarDecl&, const ScalarDecl&) = default;
};

/// d(phi) = eta.
struct RelationDecl {
  std::string name;
  DifferentialForm phi;
  DifferentialForm eta;
  friend bool operator==(const RelationDecl&, const RelationDecl&) = default;
};

struct BalanceDecl {
  std::string name;
  std::vector<Expression> actions;
  std::optional<Expression> psi;
  friend bool operator==(const BalanceDecl&, const BalanceDecl&) = default;
};

using Declaration = std::variant<FormDecl, ScalarDecl, RelationDecl, BalanceDecl>;

const std::string& declaration_name(const Declaration& d);

struct Document {
  VariableSet vars;
  std::optional<std::vector<int>> signature;
  std::vector<Declaration> declarations;

  /// The declared metric, or the Euclidean one.
  Metric metric() const;
  const Declaration* find(std::string_view name) const;

  friend bool operator==(const Document&, const Document&) = default;
};

/// Throws ParseError carrying the 1-based line and column of the first
/// problem. Never throws anything else for malformed text.
Document parse(std::string_view text);

/// Canonical text; parse(print(d)) == d.
std::string print(const Document& doc);

}  // namespace skewforms

#endif  // SKEWFORMS_DSL_HPP
