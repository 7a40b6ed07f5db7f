#include "skewforms/expr.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "skewforms/errors.hpp"

namespace skewforms {

struct Node {
  NodeKind kind = NodeKind::Constant;
  Rational value;  // constant value, or exponent of a power
  std::string name;
  Func func = Func::Sin;
  std::vector<Expression> ops;  // terms, factors, power base, function argument
};

// Builds canonical expressions. Everything that produces an Expression goes
// through these constructors, so every tree in circulation is canonical.
class ExpressionFactory {
 public:
  static Expression raw(Node node) { return Expression(std::make_shared<const Node>(std::move(node))); }
  static const Node& node(const Expression& e) { return *e.node_; }
  static bool same(const Expression& a, const Expression& b) { return a.node_ == b.node_; }

  static Expression constant(const Rational& v) {
    Node n;
    n.kind = NodeKind::Constant;
    n.value = v;
    n.value.canonicalize();
    return raw(std::move(n));
  }

  static Expression variable(std::string name) {
    if (name.empty()) throw InvalidArgument("empty variable name");
    Node n;
    n.kind = NodeKind::Variable;
    n.name = std::move(name);
    return raw(std::move(n));
  }

  static Expression sum(std::vector<Expression> terms);
  static Expression product(std::vector<Expression> factors);
  static Expression power(const Expression& base, const Rational& exponent);
  static Expression function(Func f, const Expression& arg);

 private:
  static std::pair<Rational, Expression> split_coefficient(const Expression& term);
  static Expression scale(const Expression& rest, const Rational& c);
  static Expression build_product(const Rational& coef, std::vector<Expression> factors);
  static Expression expand_product(const Expression& a, const Expression& b);
};

namespace {

using F = ExpressionFactory;

bool is_integer(const Rational& r) { return r.get_den() == 1; }

int sign_of(int c) { return (c > 0) - (c < 0); }

Rational rational_pow(const Rational& base, long exponent) {
  if (exponent == 0) return Rational(1);
  const unsigned long k = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), k);
  Rational r = exponent > 0 ? Rational(num, den) : Rational(den, num);
  r.canonicalize();
  return r;
}

// Exact q-th root of a nonnegative integer, if it exists.
std::optional<mpz_class> exact_root(const mpz_class& value, unsigned long q) {
  mpz_class r;
  if (mpz_root(r.get_mpz_t(), value.get_mpz_t(), q) != 0) return r;
  return std::nullopt;
}

constexpr long kMaxExpandedPower = 64;
constexpr std::size_t kMaxExpandedTerms = std::size_t{1} << 17;

void check_expansion(std::size_t a, std::size_t b) {
  if (a * b > kMaxExpandedTerms) throw DomainError("expression too large to expand");
}

}  // namespace

std::pair<Rational, Expression> ExpressionFactory::split_coefficient(const Expression& term) {
  const Node& n = node(term);
  if (n.kind == NodeKind::Product && n.ops.front().kind() == NodeKind::Constant) {
    if (n.ops.size() == 2) return {n.ops[0].value(), n.ops[1]};
    Node rest;
    rest.kind = NodeKind::Product;
    rest.ops.assign(n.ops.begin() + 1, n.ops.end());
    return {n.ops[0].value(), raw(std::move(rest))};
  }
  return {Rational(1), term};
}

Expression ExpressionFactory::scale(const Expression& rest, const Rational& c) {
  if (c == 1) return rest;
  Node n;
  n.kind = NodeKind::Product;
  n.ops.push_back(constant(c));
  if (rest.kind() == NodeKind::Product) {
    n.ops.insert(n.ops.end(), rest.operands().begin(), rest.operands().end());
  } else {
    n.ops.push_back(rest);
  }
  return raw(std::move(n));
}

Expression ExpressionFactory::sum(std::vector<Expression> terms) {
  Rational constant_part = 0;
  std::map<Expression, Rational, ExpressionLess> collected;
  auto add_term = [&](const Expression& t) {
    if (t.kind() == NodeKind::Constant) {
      constant_part += t.value();
      return;
    }
    auto [c, rest] = split_coefficient(t);
    collected[rest] += c;
  };
  for (const auto& t : terms) {
    if (t.kind() == NodeKind::Sum) {
      for (const auto& sub : t.operands()) add_term(sub);
    } else {
      add_term(t);
    }
  }
  std::vector<Expression> out;
  if (constant_part != 0) out.push_back(constant(constant_part));
  for (const auto& [rest, c] : collected) {
    if (c != 0) out.push_back(scale(rest, c));
  }
  if (out.empty()) return constant(0);
  if (out.size() == 1) return out.front();
  Node n;
  n.kind = NodeKind::Sum;
  n.ops = std::move(out);
  return raw(std::move(n));
}

Expression ExpressionFactory::build_product(const Rational& coef, std::vector<Expression> factors) {
  if (coef == 0) return constant(0);
  std::sort(factors.begin(), factors.end(), ExpressionLess{});
  if (factors.empty()) return constant(coef);
  if (factors.size() == 1 && coef == 1) return factors.front();
  Node n;
  n.kind = NodeKind::Product;
  if (coef != 1) n.ops.push_back(constant(coef));
  n.ops.insert(n.ops.end(), factors.begin(), factors.end());
  return raw(std::move(n));
}

Expression ExpressionFactory::product(std::vector<Expression> factors) {
  Rational coef = 1;
  std::map<Expression, Rational, ExpressionLess> powers;
  auto add = [&](const Expression& f, auto&& self) -> void {
    switch (f.kind()) {
      case NodeKind::Constant:
        coef *= f.value();
        break;
      case NodeKind::Product:
        for (const auto& sub : f.operands()) self(sub, self);
        break;
      case NodeKind::Power:
        powers[f.base()] += f.exponent();
        break;
      default:
        powers[f] += 1;
        break;
    }
  };
  for (const auto& f : factors) add(f, add);
  if (coef == 0) return constant(0);

  std::vector<Expression> plain;
  std::vector<Expression> sums;
  bool reflatten = false;
  for (const auto& [b, e] : powers) {
    if (e == 0) continue;
    Expression p = power(b, e);
    switch (p.kind()) {
      case NodeKind::Constant:
        coef *= p.value();
        break;
      case NodeKind::Product:
        reflatten = true;
        plain.push_back(p);
        break;
      case NodeKind::Sum:
        sums.push_back(p);
        break;
      default:
        plain.push_back(p);
        break;
    }
  }
  if (coef == 0) return constant(0);
  if (reflatten) {
    plain.push_back(constant(coef));
    plain.insert(plain.end(), sums.begin(), sums.end());
    return product(std::move(plain));
  }
  Expression head = build_product(coef, std::move(plain));
  if (sums.empty()) return head;

  std::vector<Expression> terms{head};
  for (const auto& s : sums) {
    check_expansion(terms.size(), s.operands().size());
    std::vector<Expression> next;
    next.reserve(terms.size() * s.operands().size());
    for (const auto& t : terms) {
      for (const auto& st : s.operands()) next.push_back(product({t, st}));
    }
    Expression partial = sum(std::move(next));
    if (partial.kind() == NodeKind::Sum) {
      terms.assign(partial.operands().begin(), partial.operands().end());
    } else {
      terms = {partial};
    }
  }
  return sum(std::move(terms));
}

// Term-by-term product of two expressions, either of which may be a sum.
Expression ExpressionFactory::expand_product(const Expression& a, const Expression& b) {
  auto terms_of = [](const Expression& e) {
    return e.kind() == NodeKind::Sum ? e.operands() : std::span<const Expression>(&e, 1);
  };
  check_expansion(terms_of(a).size(), terms_of(b).size());
  std::vector<Expression> out;
  for (const auto& ta : terms_of(a)) {
    for (const auto& tb : terms_of(b)) out.push_back(product({ta, tb}));
  }
  return sum(std::move(out));
}

Expression ExpressionFactory::power(const Expression& base, const Rational& exponent_in) {
  Rational exponent = exponent_in;
  exponent.canonicalize();
  if (exponent == 0) return constant(1);
  if (exponent == 1) return base;

  auto node_of = [&](const Expression& b) {
    Node n;
    n.kind = NodeKind::Power;
    n.value = exponent;
    n.ops.push_back(b);
    return raw(std::move(n));
  };

  switch (base.kind()) {
    case NodeKind::Constant: {
      const Rational& c = base.value();
      if (c == 0) {
        if (exponent < 0) throw DomainError("division by zero");
        return constant(0);
      }
      if (c == 1) return constant(1);
      if (is_integer(exponent)) {
        if (!exponent.get_num().fits_slong_p()) throw DomainError("exponent too large");
        const std::size_t bits = std::max(mpz_sizeinbase(c.get_num_mpz_t(), 2), mpz_sizeinbase(c.get_den_mpz_t(), 2));
        if (static_cast<double>(bits) * std::abs(exponent.get_d()) > 1 << 22) throw DomainError("constant too large");
        return constant(rational_pow(c, exponent.get_num().get_si()));
      }
      if (c < 0) throw DomainError("fractional power of a negative number");
      if (!exponent.get_den().fits_ulong_p()) throw DomainError("exponent too large");
      const unsigned long q = exponent.get_den().get_ui();
      auto rn = exact_root(c.get_num(), q);
      auto rd = exact_root(c.get_den(), q);
      if (rn && rd) return power(constant(Rational(*rn, *rd)), Rational(exponent.get_num()));
      return node_of(base);
    }
    case NodeKind::Power: {
      const Rational& inner = base.exponent();
      if (is_integer(exponent) || !is_integer(inner)) return power(base.base(), inner * exponent);
      return node_of(base);
    }
    case NodeKind::Product: {
      if (!is_integer(exponent)) return node_of(base);
      std::vector<Expression> fs;
      fs.reserve(base.operands().size());
      for (const auto& f : base.operands()) fs.push_back(power(f, exponent));
      return product(std::move(fs));
    }
    case NodeKind::Sum: {
      if (is_integer(exponent) && exponent > 0 && exponent <= kMaxExpandedPower) {
        const long k = exponent.get_num().get_si();
        Expression result = base;
        for (long i = 1; i < k; ++i) result = expand_product(result, base);
        return result;
      }
      return node_of(base);
    }
    default:
      return node_of(base);
  }
}

Expression ExpressionFactory::function(Func f, const Expression& arg) {
  if (arg.kind() == NodeKind::Constant) {
    const Rational& v = arg.value();
    switch (f) {
      case Func::Sin:
        if (v == 0) return constant(0);
        break;
      case Func::Cos:
      case Func::Exp:
        if (v == 0) return constant(1);
        break;
      case Func::Ln:
        if (v <= 0) throw DomainError("ln of a nonpositive number");
        if (v == 1) return constant(0);
        break;
    }
  }
  if (f == Func::Ln && arg.kind() == NodeKind::Function && arg.func() == Func::Exp) return arg.argument();
  Node n;
  n.kind = NodeKind::Function;
  n.func = f;
  n.ops.push_back(arg);
  return raw(std::move(n));
}

// ---------------------------------------------------------------------------

std::string_view func_name(Func f) {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Exp: return "exp";
    case Func::Ln: return "ln";
  }
  return "?";
}

std::optional<Func> func_from_name(std::string_view name) {
  if (name == "sin") return Func::Sin;
  if (name == "cos") return Func::Cos;
  if (name == "exp") return Func::Exp;
  if (name == "ln") return Func::Ln;
  return std::nullopt;
}

std::string_view to_string(ZeroVerdict v) {
  switch (v) {
    case ZeroVerdict::Zero: return "zero";
    case ZeroVerdict::Nonzero: return "nonzero";
    case ZeroVerdict::Unknown: return "unknown";
  }
  return "unknown";
}

ZeroVerdict combine(std::span<const ZeroVerdict> verdicts) {
  bool unknown = false;
  for (auto v : verdicts) {
    if (v == ZeroVerdict::Nonzero) return ZeroVerdict::Nonzero;
    if (v == ZeroVerdict::Unknown) unknown = true;
  }
  return unknown ? ZeroVerdict::Unknown : ZeroVerdict::Zero;
}

Expression::Expression() : Expression(F::constant(0)) {}
Expression::Expression(int value) : Expression(F::constant(Rational(value))) {}
Expression::Expression(const Rational& value) : Expression(F::constant(value)) {}

Expression Expression::constant(const Rational& value) { return F::constant(value); }
Expression Expression::variable(std::string name) { return F::variable(std::move(name)); }
Expression Expression::sum(std::vector<Expression> terms) { return F::sum(std::move(terms)); }
Expression Expression::product(std::vector<Expression> factors) { return F::product(std::move(factors)); }
Expression Expression::power(const Expression& base, const Rational& exponent) { return F::power(base, exponent); }
Expression Expression::function(Func f, const Expression& argument) { return F::function(f, argument); }

NodeKind Expression::kind() const { return node_->kind; }
bool Expression::is_zero_literal() const { return node_->kind == NodeKind::Constant && node_->value == 0; }
bool Expression::is_one_literal() const { return node_->kind == NodeKind::Constant && node_->value == 1; }
const Rational& Expression::value() const { return node_->value; }
const std::string& Expression::name() const { return node_->name; }
std::span<const Expression> Expression::operands() const { return node_->ops; }
const Expression& Expression::base() const { return node_->ops.front(); }
const Rational& Expression::exponent() const { return node_->value; }
Func Expression::func() const { return node_->func; }
const Expression& Expression::argument() const { return node_->ops.front(); }

bool operator==(const Expression& a, const Expression& b) { return compare(a, b) == 0; }

namespace {

int compare_from_end(std::span<const Expression> u, std::span<const Expression> v) {
  std::size_t i = u.size();
  std::size_t j = v.size();
  while (i > 0 && j > 0) {
    --i;
    --j;
    if (int c = compare(u[i], v[j]); c != 0) return c;
  }
  return sign_of(static_cast<int>(u.size()) - static_cast<int>(v.size()));
}

std::span<const Expression> as_list(const Expression& e, NodeKind kind) {
  if (e.kind() == kind) return e.operands();
  return {&e, 1};
}

}  // namespace

int compare(const Expression& a, const Expression& b) {
  if (F::same(a, b)) return 0;
  const NodeKind ka = a.kind();
  const NodeKind kb = b.kind();
  if (ka == NodeKind::Constant && kb == NodeKind::Constant) return sign_of(cmp(a.value(), b.value()));
  if (ka == NodeKind::Constant) return -1;
  if (kb == NodeKind::Constant) return 1;
  if (ka == NodeKind::Product || kb == NodeKind::Product) {
    return compare_from_end(as_list(a, NodeKind::Product), as_list(b, NodeKind::Product));
  }
  if (ka == NodeKind::Power || kb == NodeKind::Power) {
    static const Rational one(1);
    const Expression& base_a = ka == NodeKind::Power ? a.base() : a;
    const Expression& base_b = kb == NodeKind::Power ? b.base() : b;
    if (int c = compare(base_a, base_b); c != 0) return c;
    const Rational& ea = ka == NodeKind::Power ? a.exponent() : one;
    const Rational& eb = kb == NodeKind::Power ? b.exponent() : one;
    return sign_of(cmp(ea, eb));
  }
  if (ka == NodeKind::Sum || kb == NodeKind::Sum) {
    return compare_from_end(as_list(a, NodeKind::Sum), as_list(b, NodeKind::Sum));
  }
  if (ka == NodeKind::Variable && kb == NodeKind::Variable) return sign_of(a.name().compare(b.name()));
  if (ka == NodeKind::Variable) return -1;
  if (kb == NodeKind::Variable) return 1;
  if (a.func() != b.func()) return sign_of(func_name(a.func()).compare(func_name(b.func())));
  return compare(a.argument(), b.argument());
}

Expression operator+(const Expression& a, const Expression& b) { return F::sum({a, b}); }
Expression operator-(const Expression& a, const Expression& b) { return F::sum({a, F::product({F::constant(-1), b})}); }
Expression operator-(const Expression& a) { return F::product({F::constant(-1), a}); }
Expression operator*(const Expression& a, const Expression& b) { return F::product({a, b}); }
Expression operator/(const Expression& a, const Expression& b) {
  if (b.is_zero_literal()) throw DomainError("division by zero");
  return F::product({a, F::power(b, Rational(-1))});
}
Expression pow(const Expression& base, const Rational& exponent) { return F::power(base, exponent); }
Expression sin(const Expression& e) { return F::function(Func::Sin, e); }
Expression cos(const Expression& e) { return F::function(Func::Cos, e); }
Expression exp(const Expression& e) { return F::function(Func::Exp, e); }
Expression ln(const Expression& e) { return F::function(Func::Ln, e); }

// ---------------------------------------------------------------------------

VariableSet::VariableSet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw InvalidArgument("empty variable name");
    for (std::size_t j = 0; j < i; ++j) {
      if (names_[i] == names_[j]) throw InvalidArgument("duplicate variable '" + names_[i] + "'");
    }
  }
}

VariableSet::VariableSet(std::initializer_list<const char*> names)
    : VariableSet(std::vector<std::string>(names.begin(), names.end())) {}

std::optional<int> VariableSet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i + 1);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Expression differentiate(const Expression& e, std::string_view var) {
  switch (e.kind()) {
    case NodeKind::Constant:
      return Expression(0);
    case NodeKind::Variable:
      return Expression(e.name() == var ? 1 : 0);
    case NodeKind::Sum: {
      std::vector<Expression> terms;
      for (const auto& t : e.operands()) terms.push_back(differentiate(t, var));
      return F::sum(std::move(terms));
    }
    case NodeKind::Product: {
      const auto ops = e.operands();
      std::vector<Expression> terms;
      for (std::size_t i = 0; i < ops.size(); ++i) {
        Expression di = differentiate(ops[i], var);
        if (di.is_zero_literal()) continue;
        std::vector<Expression> fs(ops.begin(), ops.end());
        fs[i] = di;
        terms.push_back(F::product(std::move(fs)));
      }
      return F::sum(std::move(terms));
    }
    case NodeKind::Power: {
      Expression db = differentiate(e.base(), var);
      if (db.is_zero_literal()) return Expression(0);
      return F::product({F::constant(e.exponent()), F::power(e.base(), e.exponent() - 1), db});
    }
    case NodeKind::Function: {
      Expression da = differentiate(e.argument(), var);
      if (da.is_zero_literal()) return Expression(0);
      switch (e.func()) {
        case Func::Sin: return F::product({cos(e.argument()), da});
        case Func::Cos: return F::product({F::constant(-1), sin(e.argument()), da});
        case Func::Exp: return F::product({e, da});
        case Func::Ln: return F::product({da, F::power(e.argument(), Rational(-1))});
      }
    }
  }
  return Expression(0);
}

Expression differentiate(const Expression& e, const VariableSet& vars, std::string_view var) {
  if (!vars.contains(var)) throw UnknownVariable(std::string(var));
  return differentiate(e, var);
}

namespace {

template <class Lookup>
double eval_node(const Expression& e, const Lookup& lookup) {
  switch (e.kind()) {
    case NodeKind::Constant:
      return e.value().get_d();
    case NodeKind::Variable:
      return lookup(e.name());
    case NodeKind::Sum: {
      double acc = 0.0;
      for (const auto& t : e.operands()) acc += eval_node(t, lookup);
      return acc;
    }
    case NodeKind::Product: {
      double acc = 1.0;
      for (const auto& f : e.operands()) acc *= eval_node(f, lookup);
      return acc;
    }
    case NodeKind::Power: {
      const double b = eval_node(e.base(), lookup);
      const Rational& ex = e.exponent();
      if (b == 0.0 && ex < 0) throw DomainError("division by zero");
      if (is_integer(ex)) return std::pow(b, ex.get_d());
      if (b < 0.0) throw DomainError("fractional power of a negative number");
      return std::pow(b, ex.get_d());
    }
    case NodeKind::Function: {
      const double a = eval_node(e.argument(), lookup);
      switch (e.func()) {
        case Func::Sin: return std::sin(a);
        case Func::Cos: return std::cos(a);
        case Func::Exp: return std::exp(a);
        case Func::Ln:
          if (!(a > 0.0)) throw DomainError("ln of a nonpositive number");
          return std::log(a);
      }
    }
  }
  return 0.0;
}

double checked(double v) {
  if (!std::isfinite(v)) throw DomainError("non-finite result");
  return v;
}

}  // namespace

double evaluate(const Expression& e, const Bindings& point) {
  return checked(eval_node(e, [&](const std::string& name) {
    auto it = point.find(name);
    if (it == point.end()) throw UnboundVariable(name);
    return it->second;
  }));
}

double evaluate(const Expression& e, const VariableSet& vars, std::span<const double> point) {
  const auto& names = vars.names();
  return checked(eval_node(e, [&](const std::string& name) {
    for (std::size_t i = 0; i < names.size() && i < point.size(); ++i) {
      if (names[i] == name) return point[i];
    }
    throw UnboundVariable(name);
    return 0.0;
  }));
}

Expression simplify(const Expression& e) {
  switch (e.kind()) {
    case NodeKind::Constant:
      return F::constant(e.value());
    case NodeKind::Variable:
      return F::variable(e.name());
    case NodeKind::Sum: {
      std::vector<Expression> ts;
      for (const auto& t : e.operands()) ts.push_back(simplify(t));
      return F::sum(std::move(ts));
    }
    case NodeKind::Product: {
      std::vector<Expression> fs;
      for (const auto& f : e.operands()) fs.push_back(simplify(f));
      return F::product(std::move(fs));
    }
    case NodeKind::Power:
      return F::power(simplify(e.base()), e.exponent());
    case NodeKind::Function:
      return F::function(e.func(), simplify(e.argument()));
  }
  return e;
}

Expression substitute(const Expression& e, const std::map<std::string, Expression, std::less<>>& values) {
  switch (e.kind()) {
    case NodeKind::Constant:
      return e;
    case NodeKind::Variable: {
      auto it = values.find(e.name());
      return it == values.end() ? e : it->second;
    }
    case NodeKind::Sum: {
      std::vector<Expression> ts;
      for (const auto& t : e.operands()) ts.push_back(substitute(t, values));
      return F::sum(std::move(ts));
    }
    case NodeKind::Product: {
      std::vector<Expression> fs;
      for (const auto& f : e.operands()) fs.push_back(substitute(f, values));
      return F::product(std::move(fs));
    }
    case NodeKind::Power:
      return F::power(substitute(e.base(), values), e.exponent());
    case NodeKind::Function:
      return F::function(e.func(), substitute(e.argument(), values));
  }
  return e;
}

namespace {
void collect_variables(const Expression& e, std::set<std::string, std::less<>>& out) {
  if (e.kind() == NodeKind::Variable) {
    out.insert(e.name());
    return;
  }
  if (e.kind() == NodeKind::Constant) return;
  for (const auto& op : e.operands()) collect_variables(op, out);
}
}  // namespace

std::set<std::string, std::less<>> free_variables(const Expression& e) {
  std::set<std::string, std::less<>> out;
  collect_variables(e, out);
  return out;
}

bool depends_on(const Expression& e, std::string_view var) {
  switch (e.kind()) {
    case NodeKind::Constant: return false;
    case NodeKind::Variable: return e.name() == var;
    default:
      for (const auto& op : e.operands()) {
        if (depends_on(op, var)) return true;
      }
      return false;
  }
}

std::pair<Expression, Expression> to_rational_function(const Expression& e) {
  switch (e.kind()) {
    case NodeKind::Sum: {
      auto ops = e.operands();
      auto [num, den] = to_rational_function(ops.front());
      for (std::size_t i = 1; i < ops.size(); ++i) {
        auto [n2, d2] = to_rational_function(ops[i]);
        if (d2 == den) {
          num = num + n2;
        } else {
          num = num * d2 + n2 * den;
          den = den * d2;
        }
      }
      return {num, den};
    }
    case NodeKind::Product: {
      std::vector<Expression> nums;
      std::vector<Expression> dens;
      for (const auto& f : e.operands()) {
        auto [n, d] = to_rational_function(f);
        nums.push_back(n);
        dens.push_back(d);
      }
      return {F::product(std::move(nums)), F::product(std::move(dens))};
    }
    case NodeKind::Power: {
      if (!is_integer(e.exponent())) return {e, Expression(1)};
      auto [n, d] = to_rational_function(e.base());
      const Rational& k = e.exponent();
      if (k > 0) return {F::power(n, k), F::power(d, k)};
      return {F::power(d, -k), F::power(n, -k)};
    }
    default:
      return {e, Expression(1)};
  }
}

ZeroVerdict is_zero(const Expression& e, const ZeroTestOptions& options) {
  if (e.is_zero_literal()) return ZeroVerdict::Zero;
  if (e.is_constant()) return ZeroVerdict::Nonzero;
  try {
    if (to_rational_function(e).first.is_zero_literal()) return ZeroVerdict::Zero;
  } catch (const DomainError&) {
  }

  const auto vars = free_variables(e);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> coord(-options.sample_radius, options.sample_radius);
  Bindings point;
  int valid = 0;
  for (int attempt = 0; attempt < options.max_attempts && valid < options.probe_points; ++attempt) {
    for (const auto& v : vars) point[v] = coord(rng);
    double value = 0.0;
    double scale = 0.0;
    try {
      if (e.kind() == NodeKind::Sum) {
        for (const auto& t : e.operands()) {
          const double tv = evaluate(t, point);
          value += tv;
          scale += std::abs(tv);
        }
      } else {
        value = evaluate(e, point);
        scale = std::abs(value);
      }
    } catch (const DomainError&) {
      continue;
    }
    ++valid;
    if (std::abs(value) > options.threshold * std::max(1.0, scale)) return ZeroVerdict::Nonzero;
  }
  return ZeroVerdict::Unknown;
}

Rational variable_exponent(const Expression& term, std::string_view var) {
  switch (term.kind()) {
    case NodeKind::Variable:
      return term.name() == var ? Rational(1) : Rational(0);
    case NodeKind::Power:
      if (term.base().kind() == NodeKind::Variable && term.base().name() == var) return term.exponent();
      return Rational(0);
    case NodeKind::Product: {
      Rational total = 0;
      for (const auto& f : term.operands()) total += variable_exponent(f, var);
      return total;
    }
    default:
      return Rational(0);
  }
}

// ---------------------------------------------------------------------------
// Printing. Compact infix without spaces; constant term of a sum goes last.

namespace {

bool is_negative_term(const Expression& t) {
  if (t.kind() == NodeKind::Constant) return t.value() < 0;
  if (t.kind() == NodeKind::Product && t.operands().front().kind() == NodeKind::Constant) {
    return t.operands().front().value() < 0;
  }
  return false;
}

void print(std::string& out, const Expression& e);

void print_rational(std::string& out, const Rational& r) { out += r.get_str(); }

void print_power_base(std::string& out, const Expression& b) {
  bool parens = false;
  switch (b.kind()) {
    case NodeKind::Sum:
    case NodeKind::Product:
    case NodeKind::Power:
      parens = true;
      break;
    case NodeKind::Constant:
      parens = b.value() < 0 || !is_integer(b.value());
      break;
    default:
      break;
  }
  if (parens) out += '(';
  print(out, b);
  if (parens) out += ')';
}

void print_product_body(std::string& out, std::span<const Expression> factors) {
  bool first = true;
  for (const auto& f : factors) {
    if (!first) out += '*';
    first = false;
    if (f.kind() == NodeKind::Sum) {
      out += '(';
      print(out, f);
      out += ')';
    } else {
      print(out, f);
    }
  }
}

void print(std::string& out, const Expression& e) {
  switch (e.kind()) {
    case NodeKind::Constant:
      print_rational(out, e.value());
      return;
    case NodeKind::Variable:
      out += e.name();
      return;
    case NodeKind::Function:
      out += func_name(e.func());
      out += '(';
      print(out, e.argument());
      out += ')';
      return;
    case NodeKind::Power: {
      print_power_base(out, e.base());
      out += '^';
      if (is_integer(e.exponent())) {
        print_rational(out, e.exponent());
      } else {
        out += '(';
        print_rational(out, e.exponent());
        out += ')';
      }
      return;
    }
    case NodeKind::Product: {
      auto ops = e.operands();
      if (ops.front().kind() == NodeKind::Constant) {
        const Rational& c = ops.front().value();
        if (c == -1) {
          out += '-';
        } else {
          print_rational(out, c);
          out += '*';
        }
        print_product_body(out, ops.subspan(1));
      } else {
        print_product_body(out, ops);
      }
      return;
    }
    case NodeKind::Sum: {
      std::vector<Expression> terms(e.operands().begin(), e.operands().end());
      if (terms.front().kind() == NodeKind::Constant) std::rotate(terms.begin(), terms.begin() + 1, terms.end());
      bool first = true;
      for (const auto& t : terms) {
        if (first) {
          print(out, t);
          first = false;
        } else if (is_negative_term(t)) {
          out += '-';
          print(out, -t);
        } else {
          out += '+';
          print(out, t);
        }
      }
      return;
    }
  }
}

}  // namespace

std::string Expression::to_string() const {
  std::string out;
  print(out, *this);
  return out;
}

}  // namespace skewforms
