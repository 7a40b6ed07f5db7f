#include <algorithm>
#include <array>
#include <cctype>
#include <functional>

#include "skewforms/dsl.hpp"
#include "skewforms/errors.hpp"

namespace skewforms {

const std::string& declaration_name(const Declaration& d) {
  return std::visit([](const auto& decl) -> const std::string& { return decl.name; }, d);
}

Metric Document::metric() const {
  if (signature) return Metric(vars, *signature);
  return Metric::euclidean(vars);
}

const Declaration* Document::find(std::string_view name) const {
  for (const auto& d : declarations) {
    if (declaration_name(d) == name) return &d;
  }
  return nullptr;
}

namespace {

constexpr int kMaxDepth = 256;
constexpr int kMaxExponentPart = 1024;
constexpr int kMaxDecimalExponent = 308;

constexpr std::array<std::string_view, 12> kReserved = {"vars", "metric", "form", "scalar", "relation", "balance",
                                                         "d",    "sin",    "cos",  "exp",    "ln",       "sqrt"};

bool reserved(std::string_view name) {
  return std::find(kReserved.begin(), kReserved.end(), name) != kReserved.end();
}

enum class TokenKind : std::uint8_t { Ident, Number, Punct, End, Separator };

struct Token {
  TokenKind kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  int depth = 0;
  std::size_t i = 0;
  auto continues = [&] {
    if (out.empty()) return true;
    const Token& t = out.back();
    if (t.kind == TokenKind::Separator) return true;
    if (t.kind != TokenKind::Punct) return false;
    return t.text != ")";
  };
  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
      if (src[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const unsigned char c = static_cast<unsigned char>(src[i]);
    if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (c == '\n' || c == ';') {
      if (c == ';' || (depth == 0 && !continues())) out.push_back({TokenKind::Separator, std::string(1, static_cast<char>(c)), line, column});
      advance(1);
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({TokenKind::Ident, std::string(src.substr(i, j - i)), line, column});
      advance(j - i);
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t j = i;
      auto digits = [&] {
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      };
      digits();
      if (j < src.size() && src[j] == '.') {
        ++j;
        digits();
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          j = k;
          digits();
        }
      }
      out.push_back({TokenKind::Number, std::string(src.substr(i, j - i)), line, column});
      advance(j - i);
      continue;
    }
    if (std::string_view("+-*/^(),:=").find(static_cast<char>(c)) != std::string_view::npos) {
      if (c == '(') ++depth;
      if (c == ')' && depth > 0) --depth;
      out.push_back({TokenKind::Punct, std::string(1, static_cast<char>(c)), line, column});
      advance(1);
      continue;
    }
    std::string shown;
    if (std::isprint(c)) {
      shown = std::string("'") + static_cast<char>(c) + "'";
    } else {
      static constexpr char kHex[] = "0123456789abcdef";
      shown = std::string("byte 0x") + kHex[c >> 4] + kHex[c & 15];
    }
    throw ParseError(line, column, "unexpected character " + shown);
  }
  out.push_back({TokenKind::End, "", line, column});
  return out;
}

Rational parse_number(const Token& t) {
  const std::string& s = t.text;
  std::string mantissa;
  std::size_t i = 0;
  int scale = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) mantissa += s[i++];
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      mantissa += s[i++];
      --scale;
    }
  }
  long exponent = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
    while (i < s.size()) {
      exponent = exponent * 10 + (s[i++] - '0');
      if (exponent > kMaxDecimalExponent) throw ParseError(t.line, t.column, "number exponent out of range");
    }
    if (neg) exponent = -exponent;
  }
  const long total = exponent + scale;
  if (mantissa.size() > 4096 || total < -4 * kMaxDecimalExponent) {
    throw ParseError(t.line, t.column, "number literal too long");
  }
  Rational value(mpz_class(mantissa, 10));
  mpz_class ten;
  mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(total < 0 ? -total : total));
  if (total >= 0) {
    value *= ten;
  } else {
    value /= ten;
  }
  value.canonicalize();
  return value;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  Document run() {
    skip_separators();
    if (!is_ident("vars")) throw error_here("expected 'vars' declaration");
    parse_vars();
    end_statement();
    while (true) {
      skip_separators();
      if (peek().kind == TokenKind::End) break;
      const Token& kw = peek();
      if (kw.kind != TokenKind::Ident) throw error_here("expected a declaration");
      if (kw.text == "vars") throw error_here("'vars' may only be declared once");
      if (kw.text == "metric") {
        parse_metric();
      } else if (kw.text == "form" || kw.text == "scalar") {
        parse_value_decl();
      } else if (kw.text == "relation") {
        parse_relation();
      } else if (kw.text == "balance") {
        parse_balance();
      } else {
        throw error_here("unknown declaration '" + kw.text + "'");
      }
      end_statement();
    }
    return std::move(doc_);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Document doc_;
  int depth_ = 0;

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (t.kind != TokenKind::End) ++pos_;
    return t;
  }
  bool is_punct(char c) const { return peek().kind == TokenKind::Punct && peek().text[0] == c; }
  bool is_ident(std::string_view s) const { return peek().kind == TokenKind::Ident && peek().text == s; }

  static ParseError error_at(const Token& t, const std::string& message) { return {t.line, t.column, message}; }
  ParseError error_here(const std::string& message) const {
    const Token& t = peek();
    if (t.kind == TokenKind::End) return error_at(t, message + ", found end of input");
    if (t.kind == TokenKind::Separator) return error_at(t, message + ", found end of statement");
    return error_at(t, message + ", found '" + t.text + "'");
  }

  void expect_punct(char c) {
    if (!is_punct(c)) throw error_here(std::string("expected '") + c + "'");
    next();
  }
  void expect_ident(std::string_view s) {
    if (!is_ident(s)) throw error_here("expected '" + std::string(s) + "'");
    next();
  }
  void skip_separators() {
    while (peek().kind == TokenKind::Separator) next();
  }
  void end_statement() {
    if (peek().kind != TokenKind::Separator && peek().kind != TokenKind::End) {
      throw error_here("expected end of statement");
    }
  }

  template <typename F>
  auto guard(const Token& at, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw error_at(at, e.what());
    }
  }

  void parse_vars() {
    next();
    std::vector<std::string> names;
    while (true) {
      const Token& t = peek();
      if (t.kind != TokenKind::Ident) throw error_here("expected a variable name");
      if (reserved(t.text)) throw error_at(t, "'" + t.text + "' is reserved");
      if (std::find(names.begin(), names.end(), t.text) != names.end()) {
        throw error_at(t, "duplicate variable " + t.text);
      }
      names.push_back(t.text);
      next();
      if (!is_punct(',')) break;
      next();
    }
    for (const auto& a : names) {
      for (const auto& b : names) {
        if (a == "d" + b) throw error_at(tokens_[0], "variable " + a + " collides with the differential of " + b);
      }
    }
    doc_.vars = VariableSet(names);
  }

  void parse_metric() {
    const Token& kw = next();
    if (doc_.signature) throw error_at(kw, "metric already declared");
    expect_punct('(');
    std::vector<int> sig;
    while (true) {
      int sign = 1;
      bool had_sign = false;
      if (is_punct('+') || is_punct('-')) {
        sign = next().text == "-" ? -1 : 1;
        had_sign = true;
      }
      if (peek().kind == TokenKind::Number && peek().text == "1") {
        next();
      } else if (!had_sign) {
        throw error_here("expected +1 or -1");
      }
      sig.push_back(sign);
      if (!is_punct(',')) break;
      next();
    }
    expect_punct(')');
    if (static_cast<int>(sig.size()) != doc_.vars.dimension()) {
      throw error_at(kw, "metric needs " + std::to_string(doc_.vars.dimension()) + " entries, got " +
                             std::to_string(sig.size()));
    }
    doc_.signature = std::move(sig);
  }

  std::string parse_new_name() {
    const Token& t = peek();
    if (t.kind != TokenKind::Ident) throw error_here("expected a name");
    if (reserved(t.text)) throw error_at(t, "'" + t.text + "' is reserved");
    if (doc_.vars.contains(t.text)) throw error_at(t, "name " + t.text + " is a variable");
    if (t.text.size() > 1 && t.text[0] == 'd' && doc_.vars.contains(std::string_view(t.text).substr(1))) {
      throw error_at(t, "name " + t.text + " is a differential");
    }
    if (doc_.find(t.text)) throw error_at(t, "duplicate name " + t.text);
    next();
    return t.text;
  }

  void parse_value_decl() {
    const bool scalar = next().text == "scalar";
    std::string name = parse_new_name();
    expect_punct('=');
    const Token& at = peek();
    DifferentialForm value = parse_expr();
    if (scalar) {
      if (value.degree() != 0 && !value.empty()) throw error_at(at, "scalar declaration needs a 0-form");
      doc_.declarations.emplace_back(ScalarDecl{std::move(name), value.coefficient({})});
    } else {
      doc_.declarations.emplace_back(FormDecl{std::move(name), std::move(value)});
    }
  }

  void parse_relation() {
    next();
    std::string name = parse_new_name();
    expect_punct(':');
    expect_ident("d");
    expect_punct('(');
    const Token& phi_at = peek();
    DifferentialForm phi = parse_expr();
    expect_punct(')');
    expect_punct('=');
    const Token& eta_at = peek();
    DifferentialForm eta = parse_expr();
    const int n = doc_.vars.dimension();
    if (phi.empty() && !eta.empty()) {
      if (eta.degree() == 0) throw error_at(eta_at, "relation needs deg(eta) = deg(phi) + 1");
      phi = DifferentialForm(doc_.vars, eta.degree() - 1);
    } else if (eta.empty()) {
      if (phi.degree() >= n) throw error_at(phi_at, "d(phi) of an n-form has no room for eta");
      eta = DifferentialForm(doc_.vars, phi.degree() + 1);
    } else if (eta.degree() != phi.degree() + 1) {
      throw error_at(eta_at, "relation needs deg(eta) = deg(phi) + 1");
    }
    doc_.declarations.emplace_back(RelationDecl{std::move(name), std::move(phi), std::move(eta)});
  }

  Expression parse_scalar_expr() {
    const Token& at = peek();
    DifferentialForm v = parse_expr();
    if (v.degree() != 0 && !v.empty()) throw error_at(at, "expected a scalar expression");
    return v.coefficient({});
  }

  void parse_balance() {
    next();
    BalanceDecl decl;
    decl.name = parse_new_name();
    expect_punct(':');
    expect_ident("A");
    expect_punct('=');
    const Token& open = peek();
    expect_punct('(');
    while (true) {
      decl.actions.push_back(parse_scalar_expr());
      if (!is_punct(',')) break;
      next();
    }
    expect_punct(')');
    if (static_cast<int>(decl.actions.size()) != doc_.vars.dimension()) {
      throw error_at(open, "balance needs " + std::to_string(doc_.vars.dimension()) + " actions, got " +
                               std::to_string(decl.actions.size()));
    }
    if (is_punct(',')) {
      next();
      expect_ident("psi");
      expect_punct('=');
      decl.psi = parse_scalar_expr();
    }
    doc_.declarations.emplace_back(std::move(decl));
  }

  // --- expressions ---------------------------------------------------------

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > kMaxDepth) throw p.error_here("expression nested too deeply");
    }
    ~DepthGuard() { --p.depth_; }
  };

  DifferentialForm parse_expr() {
    DepthGuard g(*this);
    DifferentialForm lhs = parse_term();
    while (is_punct('+') || is_punct('-')) {
      const Token& op = next();
      DifferentialForm rhs = parse_term();
      lhs = guard(op, [&] {
        if (!lhs.empty() && !rhs.empty() && lhs.degree() != rhs.degree()) {
          throw InvalidArgument("cannot combine forms of degree " + std::to_string(lhs.degree()) + " and " +
                                std::to_string(rhs.degree()));
        }
        return op.text == "+" ? lhs + rhs : lhs - rhs;
      });
    }
    return lhs;
  }

  DifferentialForm parse_term() {
    DifferentialForm lhs = parse_unary();
    while (is_punct('*') || is_punct('/')) {
      const Token& op = next();
      DifferentialForm rhs = parse_unary();
      lhs = guard(op, [&] {
        if (op.text == "*") {
          if (lhs.degree() >= 1 && rhs.degree() >= 1) throw InvalidArgument("use '^' for the wedge product");
          if (lhs.degree() == 0) return lhs.coefficient({}) * rhs;
          return rhs.coefficient({}) * lhs;
        }
        if (rhs.degree() != 0) throw InvalidArgument("cannot divide by a form of degree " + std::to_string(rhs.degree()));
        const Expression c = rhs.coefficient({});
        if (c.is_zero_literal()) throw DomainError("division by zero");
        return (Expression(1) / c) * lhs;
      });
    }
    return lhs;
  }

  DifferentialForm parse_unary() {
    DepthGuard g(*this);
    if (is_punct('-')) {
      const Token& op = next();
      DifferentialForm v = parse_unary();
      return guard(op, [&] { return -v; });
    }
    if (is_punct('+')) {
      next();
      return parse_unary();
    }
    return parse_power();
  }

  DifferentialForm parse_power() {
    DifferentialForm base = parse_primary();
    if (!is_punct('^')) return base;
    const Token& op = next();
    DifferentialForm rhs = parse_unary();
    return guard(op, [&] {
      if (base.degree() >= 1 || rhs.degree() >= 1) return wedge(base, rhs);
      const Expression e = rhs.coefficient({});
      if (!e.is_constant()) throw InvalidArgument("exponent must be a rational constant");
      const Rational& q = e.value();
      if (abs(q.get_num()) > kMaxExponentPart || q.get_den() > kMaxExponentPart) {
        throw InvalidArgument("exponent too large");
      }
      return DifferentialForm::scalar(doc_.vars, pow(base.coefficient({}), q));
    });
  }

  DifferentialForm scalar(const Expression& e) const { return DifferentialForm::scalar(doc_.vars, e); }

  DifferentialForm parse_primary() {
    DepthGuard g(*this);
    const Token& t = peek();
    if (t.kind == TokenKind::Number) {
      next();
      return scalar(Expression(parse_number(t)));
    }
    if (is_punct('(')) {
      next();
      DifferentialForm v = parse_expr();
      expect_punct(')');
      return v;
    }
    if (t.kind != TokenKind::Ident) throw error_here("expected an expression");
    next();
    if (t.text == "d") {
      if (!is_punct('(')) throw error_here("expected '(' after d");
      next();
      DifferentialForm v = parse_expr();
      expect_punct(')');
      return guard(t, [&] { return exterior_derivative(v); });
    }
    if (t.text == "sin" || t.text == "cos" || t.text == "exp" || t.text == "ln" || t.text == "sqrt") {
      if (!is_punct('(')) throw error_here("expected '(' after " + t.text);
      next();
      const Token& at = peek();
      DifferentialForm v = parse_expr();
      expect_punct(')');
      if (v.degree() != 0 && !v.empty()) throw error_at(at, t.text + " needs a scalar argument");
      return guard(t, [&] {
        const Expression a = v.coefficient({});
        if (t.text == "sin") return scalar(sin(a));
        if (t.text == "cos") return scalar(cos(a));
        if (t.text == "exp") return scalar(exp(a));
        if (t.text == "ln") return scalar(ln(a));
        return scalar(pow(a, Rational(1, 2)));
      });
    }
    if (auto idx = doc_.vars.index_of(t.text)) return scalar(doc_.vars.coordinate(*idx));
    if (const Declaration* d = doc_.find(t.text)) {
      if (const auto* f = std::get_if<FormDecl>(d)) return f->form;
      if (const auto* s = std::get_if<ScalarDecl>(d)) return scalar(s->value);
      throw error_at(t, t.text + " is not a form or scalar");
    }
    if (t.text.size() > 1 && t.text[0] == 'd') {
      const std::string_view rest = std::string_view(t.text).substr(1);
      if (auto idx = doc_.vars.index_of(rest)) return DifferentialForm::monomial(doc_.vars, {*idx});
      throw error_at(t, "unknown variable " + std::string(rest));
    }
    throw error_at(t, "unknown variable " + t.text);
  }
};

}  // namespace

Document parse(std::string_view text) {
  std::optional<Parser> parser;
  try {
    parser.emplace(text);
    return parser->run();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(1, 1, e.what());
  }
}

}  // namespace skewforms
