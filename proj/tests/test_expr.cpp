#include <gtest/gtest.h>

#include <cmath>

#include "skewforms/errors.hpp"
#include "skewforms/expr.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace skewforms;

namespace {

const Expression x = Expression::variable("x");
const Expression y = Expression::variable("y");
const Expression z = Expression::variable("z");

}  // namespace

TEST(Expr, ConstantsFoldExactly) {
  EXPECT_EQ((Expression(1) / 3 + Expression(2) / 3).to_string(), "1");
  EXPECT_EQ(pow(Expression(8), Rational(2, 3)).to_string(), "4");
  EXPECT_EQ(pow(Expression(2), -2).to_string(), "1/4");
  EXPECT_EQ(pow(Expression(2), Rational(1, 2)).to_string(), "2^(1/2)");
  EXPECT_THROW(pow(Expression(-8), Rational(1, 2)), DomainError);
  EXPECT_THROW(Expression(1) / 0, DomainError);
  EXPECT_THROW(pow(Expression(0), -1), DomainError);
}

TEST(Expr, CanonicalFormIsOrderIndependent) {
  EXPECT_EQ(x + y, y + x);
  EXPECT_EQ(x * y * 2, 2 * y * x);
  EXPECT_EQ((x + y) * (x - y), x * x - y * y);
  EXPECT_EQ(x - x, Expression(0));
  EXPECT_EQ(x * pow(x, -1), Expression(1));
  EXPECT_EQ(pow(x, Rational(1, 2)) * pow(x, Rational(1, 2)), x);
  EXPECT_EQ((x + 1) * (x + 1), pow(x + 1, 2));
}

TEST(Expr, Printing) {
  EXPECT_EQ((x * x + y).to_string(), "x^2+y");
  EXPECT_EQ((2 * x * y).to_string(), "2*x*y");
  EXPECT_EQ((x - 2 * y - 1).to_string(), "x-2*y-1");
  EXPECT_EQ((-x).to_string(), "-x");
  EXPECT_EQ(pow(x + y, Rational(1, 2)).to_string(), "(x+y)^(1/2)");
  EXPECT_EQ(pow(x, -1).to_string(), "x^-1");
  EXPECT_EQ((sin(x) * exp(y)).to_string(), "exp(y)*sin(x)");
  EXPECT_EQ((Rational(1, 2) * x).to_string(), "1/2*x");
}

TEST(Expr, FunctionFolding) {
  EXPECT_EQ(sin(Expression(0)), Expression(0));
  EXPECT_EQ(cos(Expression(0)), Expression(1));
  EXPECT_EQ(exp(Expression(0)), Expression(1));
  EXPECT_EQ(ln(Expression(1)), Expression(0));
  EXPECT_EQ(ln(exp(x + y)), x + y);
  EXPECT_THROW(ln(Expression(0)), DomainError);
  EXPECT_THROW(ln(Expression(-2)), DomainError);
}

TEST(Expr, DifferentiateExamples) {
  EXPECT_EQ(differentiate(x * x * y, "x").to_string(), "2*x*y");
  EXPECT_EQ(differentiate(sin(x), "x"), cos(x));
  EXPECT_EQ(differentiate(Expression(7), "y"), Expression(0));
  EXPECT_EQ(differentiate(exp(x * y), "y"), x * exp(x * y));
  EXPECT_EQ(differentiate(ln(x), "x"), pow(x, -1));
  EXPECT_EQ(differentiate(cos(x * x), "x"), -2 * x * sin(x * x));
  EXPECT_EQ(differentiate(pow(x, Rational(1, 2)), "x"), Rational(1, 2) * pow(x, Rational(-1, 2)));
}

TEST(Expr, DifferentiateRejectsUnknownVariable) {
  const VariableSet vars{"x", "y"};
  EXPECT_THROW(differentiate(x, vars, "z"), UnknownVariable);
  try {
    differentiate(x, vars, "z");
  } catch (const UnknownVariable& e) {
    EXPECT_STREQ(e.what(), "unknown variable z");
  }
}

TEST(Expr, EvaluateExamples) {
  EXPECT_DOUBLE_EQ(evaluate(x * x + y, Bindings{{"x", 2.0}, {"y", 1.0}}), 5.0);
  EXPECT_THROW(evaluate(ln(x), Bindings{{"x", 0.0}}), DomainError);
  EXPECT_DOUBLE_EQ(evaluate(exp(x) * sin(y), Bindings{{"x", 0.0}, {"y", 0.0}}), 0.0);
  EXPECT_THROW(evaluate(x + y, Bindings{{"x", 1.0}}), UnboundVariable);
  EXPECT_THROW(evaluate(pow(x, -1), Bindings{{"x", 0.0}}), DomainError);
  EXPECT_THROW(evaluate(pow(x, Rational(1, 2)), Bindings{{"x", -1.0}}), DomainError);
}

TEST(Expr, ZeroTestExamples) {
  EXPECT_EQ(is_zero(pow(x + y, 2) - x * x - 2 * x * y - y * y), ZeroVerdict::Zero);
  EXPECT_EQ(is_zero(x - y), ZeroVerdict::Nonzero);
  const ZeroVerdict trig = is_zero(pow(sin(x), 2) + pow(cos(x), 2) - 1);
  EXPECT_NE(trig, ZeroVerdict::Nonzero);
  EXPECT_EQ(is_zero(1 / (x + 1) + x / (x + 1) - 1), ZeroVerdict::Zero);
  EXPECT_EQ(is_zero(Expression(0)), ZeroVerdict::Zero);
  EXPECT_EQ(is_zero(Expression(Rational(1, 1000000))), ZeroVerdict::Nonzero);
}

TEST(Expr, ZeroTestSkipsDomainHoles) {
  // ln(x) is undefined on half of the sample box; probing must still decide.
  EXPECT_EQ(is_zero(ln(x) - ln(y)), ZeroVerdict::Nonzero);
  EXPECT_NE(is_zero(ln(x * x) - 2 * ln(x)), ZeroVerdict::Nonzero);
}

TEST(Expr, CombineVerdicts) {
  const std::vector<ZeroVerdict> a{ZeroVerdict::Zero, ZeroVerdict::Unknown, ZeroVerdict::Nonzero};
  EXPECT_EQ(combine(a), ZeroVerdict::Nonzero);
  const std::vector<ZeroVerdict> b{ZeroVerdict::Zero, ZeroVerdict::Unknown};
  EXPECT_EQ(combine(b), ZeroVerdict::Unknown);
  const std::vector<ZeroVerdict> c{ZeroVerdict::Zero, ZeroVerdict::Zero};
  EXPECT_EQ(combine(c), ZeroVerdict::Zero);
}

TEST(Expr, SubstituteAndFreeVariables) {
  const Expression e = x * x + sin(y);
  const Expression s = substitute(e, {{"x", y + 1}});
  EXPECT_EQ(s, y * y + 2 * y + 1 + sin(y));
  EXPECT_EQ(free_variables(e), (std::set<std::string, std::less<>>{"x", "y"}));
  EXPECT_TRUE(depends_on(e, "y"));
  EXPECT_FALSE(depends_on(e, "z"));
}

TEST(Expr, VariableSetValidation) {
  EXPECT_THROW(VariableSet({"x", "x"}), InvalidArgument);
  EXPECT_THROW(VariableSet(std::vector<std::string>{""}), InvalidArgument);
  const VariableSet v{"x", "y", "z"};
  EXPECT_EQ(v.dimension(), 3);
  EXPECT_EQ(v.index_of("y"), 2);
  EXPECT_FALSE(v.index_of("w").has_value());
}

TEST(Expr, ExpansionIsBounded) {
  Expression big = 0;
  for (int i = 0; i < 12; ++i) big = big + Expression::variable("v" + std::to_string(i));
  EXPECT_THROW(pow(big, 64), DomainError);
}

// Property: derivatives agree with central differences on random polynomials.
TEST(ExprProperty, DerivativeMatchesFiniteDifferences) {
  gen::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen::uniform(rng, 1, 4);
    const VariableSet vars = gen::coords(n);
    const Expression e = gen::random_polynomial(rng, vars, 4, 5);
    const int v = gen::uniform(rng, 1, n);
    const Expression de = differentiate(e, vars, vars.name(v));
    for (int k = 0; k < 20; ++k) {
      const auto p = gen::random_point(rng, n);
      const double sym = evaluate(de, vars, p);
      const double fd = oracle::central_difference([&](const std::vector<double>& q) { return evaluate(e, vars, q); },
                                                   p, v - 1);
      ASSERT_LE(std::abs(sym - fd), 1e-6 * std::max(1.0, std::abs(sym))) << e.to_string() << " d/d" << vars.name(v);
    }
  }
}

TEST(ExprProperty, SmoothDerivativeMatchesFiniteDifferences) {
  gen::Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const VariableSet vars = gen::coords(2);
    const Expression e = gen::random_smooth(rng, vars);
    const Expression de = differentiate(e, "x");
    for (int k = 0; k < 10; ++k) {
      const auto p = gen::random_point(rng, 2, -1, 1);
      const double sym = evaluate(de, vars, p);
      const double fd = oracle::central_difference([&](const std::vector<double>& q) { return evaluate(e, vars, q); },
                                                   p, 0);
      ASSERT_LE(std::abs(sym - fd), 1e-5 * std::max(1.0, std::abs(sym))) << e.to_string();
    }
  }
}

TEST(ExprProperty, SimplifyIsIdempotent) {
  gen::Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const VariableSet vars = gen::coords(gen::uniform(rng, 1, 4));
    const Expression e = gen::chance(rng, 0.5) ? gen::random_smooth(rng, vars) : gen::random_polynomial(rng, vars);
    const Expression once = simplify(e);
    EXPECT_EQ(simplify(once), once);
    EXPECT_EQ(once, e);
  }
}

TEST(ExprProperty, ZeroVerdictNeverContradictsWitness) {
  gen::Rng rng(14);
  for (int trial = 0; trial < 300; ++trial) {
    const VariableSet vars = gen::coords(gen::uniform(rng, 1, 3));
    const Expression e = gen::random_smooth(rng, vars) - gen::random_smooth(rng, vars);
    if (is_zero(e) != ZeroVerdict::Zero) continue;
    for (int k = 0; k < 50; ++k) {
      const auto p = gen::random_point(rng, vars.dimension());
      double v = 0.0;
      try {
        v = evaluate(e, vars, p);
      } catch (const DomainError&) {
        continue;
      }
      ASSERT_LE(std::abs(v), 1e-6) << e.to_string();
    }
  }
}

TEST(ExprProperty, ArithmeticAgreesWithEvaluation) {
  gen::Rng rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    const VariableSet vars = gen::coords(3);
    const Expression a = gen::random_polynomial(rng, vars);
    const Expression b = gen::random_polynomial(rng, vars);
    const auto p = gen::random_point(rng, 3);
    const double va = evaluate(a, vars, p);
    const double vb = evaluate(b, vars, p);
    EXPECT_NEAR(evaluate(a * b, vars, p), va * vb, 1e-9 * std::max(1.0, std::abs(va * vb)));
    EXPECT_NEAR(evaluate(a - b, vars, p), va - vb, 1e-9 * std::max(1.0, std::abs(va) + std::abs(vb)));
    EXPECT_NEAR(evaluate(pow(a, 3), vars, p), va * va * va, 1e-8 * std::max(1.0, std::abs(va * va * va)));
  }
}
