#include <gtest/gtest.h>

#include <cmath>

#include "skewforms/errors.hpp"
#include "skewforms/forms.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace skewforms;

namespace {

const VariableSet xy{"x", "y"};
const VariableSet xyz{"x", "y", "z"};
const Expression x = Expression::variable("x");
const Expression y = Expression::variable("y");
const Expression z = Expression::variable("z");

DifferentialForm d(const VariableSet& v, int i) { return DifferentialForm::monomial(v, {i}); }

}  // namespace

TEST(Forms, SortWithSign) {
  IndexTuple t{3, 1, 2};
  EXPECT_EQ(sort_with_sign(t), 1);
  EXPECT_EQ(t, (IndexTuple{1, 2, 3}));
  IndexTuple u{2, 1};
  EXPECT_EQ(sort_with_sign(u), -1);
  IndexTuple r{1, 2, 1};
  EXPECT_EQ(sort_with_sign(r), 0);
}

TEST(Forms, UnsortedInputIsCanonicalized) {
  const DifferentialForm f = DifferentialForm::monomial(xy, {2, 1}, x);
  EXPECT_EQ(f.to_string(), "-x*dx^dy");
  EXPECT_EQ(f.coefficient({1, 2}), -x);
}

TEST(Forms, DegreeValidation) {
  EXPECT_THROW(DifferentialForm(xy, 3), InvalidArgument);
  EXPECT_THROW(DifferentialForm(xy, -1), InvalidArgument);
  EXPECT_THROW(DifferentialForm::one_form(xy, {x}), InvalidArgument);
}

TEST(Forms, ZeroFormsCompareEqual) {
  EXPECT_EQ(DifferentialForm(xy, 1), DifferentialForm(xy, 2));
  EXPECT_EQ(DifferentialForm::one_form(xy, {x - x, 0}), DifferentialForm(xy, 1));
  EXPECT_EQ(DifferentialForm(xy, 2).to_string(), "0");
  EXPECT_NE(d(xy, 1), d(xy, 2));
}

TEST(Forms, WedgeExamples) {
  EXPECT_TRUE(wedge(d(xy, 1), d(xy, 1)).empty());
  EXPECT_EQ(wedge(d(xy, 1), d(xy, 2)), -wedge(d(xy, 2), d(xy, 1)));
  const DifferentialForm a = y * d(xy, 1);
  const DifferentialForm b = x * d(xy, 2);
  EXPECT_EQ(wedge(a, b).to_string(), "x*y*dx^dy");
}

TEST(Forms, WedgeOverflowClamps) {
  const DifferentialForm w = wedge(DifferentialForm::monomial(xy, {1, 2}), d(xy, 1));
  EXPECT_TRUE(w.empty());
  EXPECT_EQ(w.degree(), 2);
}

TEST(Forms, WedgeRejectsMismatchedCoordinates) {
  EXPECT_THROW(wedge(d(xy, 1), d(xyz, 1)), InvalidArgument);
  EXPECT_THROW(d(xy, 1) + d(xyz, 1), InvalidArgument);
}

TEST(Forms, ExteriorDerivativeExamples) {
  EXPECT_EQ(exterior_derivative(DifferentialForm::scalar(xy, x * x + y * y)).to_string(), "2*x*dx + 2*y*dy");
  EXPECT_EQ(exterior_derivative(y * d(xy, 1)).to_string(), "-dx^dy");
  const DifferentialForm w = DifferentialForm::one_form(xy, {x * y, exp(x)});
  EXPECT_TRUE(exterior_derivative(exterior_derivative(w)).empty());
  const DifferentialForm top = DifferentialForm::monomial(xy, {1, 2}, x);
  EXPECT_TRUE(exterior_derivative(top).empty());
  EXPECT_EQ(exterior_derivative(top).degree(), 2);
}

TEST(Forms, CommutatorExamples) {
  const Commutator k = commutator(y * d(xy, 1));
  EXPECT_EQ(k.component(1, 2), Expression(-1));
  EXPECT_EQ(k.component(2, 1), Expression(1));
  EXPECT_EQ(k.component(1, 1), Expression(0));
  EXPECT_EQ(k.label(1, 2), "K_xy");
  EXPECT_EQ(commutator(DifferentialForm::one_form(xy, {2 * x * y, x * x})).is_zero(), ZeroVerdict::Zero);
  const Expression f = sin(x * y) + pow(x, 3) * y;
  const Commutator g = commutator(DifferentialForm::one_form(xy, {differentiate(f, "x"), differentiate(f, "y")}));
  EXPECT_EQ(g.is_zero(), ZeroVerdict::Zero);
  EXPECT_THROW(commutator(DifferentialForm::scalar(xy, x)), InvalidArgument);
  EXPECT_EQ(Commutator(DifferentialForm::one_form(VariableSet{"x1", "x2"}, {0, 0})).label(1, 2), "K_x1_x2");
}

TEST(Forms, PullbackExamples) {
  const VariableSet t{"t"};
  const Expression tv = Expression::variable("t");
  const Expression c = Expression::variable("c");
  const Parameterization curve{t, {tv, Expression(Rational(3, 2))}};
  EXPECT_EQ(pullback(y * d(xy, 1), curve).to_string(), "3/2*dt");
  const Parameterization chart{VariableSet{"t", "c"}, {tv, c, Expression(0)}};
  EXPECT_EQ(pullback(y * d(xyz, 1), chart).to_string(), "c*dt");
  EXPECT_EQ(pullback(d(xyz, 2), chart).to_string(), "dc");
  EXPECT_TRUE(pullback(d(xyz, 3), chart).empty());
  const Expression f = x * x * y;
  const Parameterization circle{t, {cos(tv), sin(tv)}};
  EXPECT_EQ(is_zero(pullback(exterior_derivative(DifferentialForm::scalar(xy, f)), circle) -
                    exterior_derivative(DifferentialForm::scalar(t, substitute(f, {{"x", cos(tv)}, {"y", sin(tv)}})))),
            ZeroVerdict::Zero);
  EXPECT_TRUE(pullback(DifferentialForm::monomial(xy, {1, 2}), curve).empty());
  EXPECT_THROW(pullback(d(xy, 1), Parameterization{VariableSet{"s", "t"}, {tv, tv}}), InvalidArgument);
  EXPECT_THROW(pullback(d(xy, 1), Parameterization{t, {tv}}), InvalidArgument);
}

TEST(Forms, EvaluateFormExamples) {
  const auto v = evaluate_form(x * d(xy, 2), Bindings{{"x", 3.0}, {"y", 0.0}});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_DOUBLE_EQ(v.at({2}), 3.0);
  EXPECT_TRUE(evaluate_form(DifferentialForm(xy, 1), Bindings{{"x", 1.0}, {"y", 1.0}}).empty());
  const VariableSet xonly{"x"};
  const auto s = evaluate_form(sin(x) * DifferentialForm::monomial(xonly, {1}), Bindings{{"x", M_PI / 2}});
  EXPECT_DOUBLE_EQ(s.at({1}), 1.0);
}

TEST(Forms, Printing) {
  EXPECT_EQ(DifferentialForm::one_form(xy, {x + y, -2 * y}).to_string(), "(x+y)*dx - 2*y*dy");
  EXPECT_EQ(DifferentialForm::one_form(xy, {-1, 1}).to_string(), "-dx + dy");
  EXPECT_EQ(DifferentialForm::scalar(xy, x - y).to_string(), "x-y");
}

// --- properties -------------------------------------------------------------

class FormsProperty : public ::testing::TestWithParam<int> {};

TEST_P(FormsProperty, DdIsZero) {
  const int n = GetParam();
  const VariableSet vars = gen::coords(n);
  gen::Rng rng(100 + n);
  for (int p = 0; p < n; ++p) {
    for (int trial = 0; trial < 200; ++trial) {
      const DifferentialForm a = gen::random_form(rng, vars, p);
      ASSERT_TRUE(exterior_derivative(exterior_derivative(a)).empty()) << a.to_string();
    }
  }
}

TEST_P(FormsProperty, GradedAntisymmetryAndLeibniz) {
  const int n = GetParam();
  const VariableSet vars = gen::coords(n);
  gen::Rng rng(200 + n);
  for (int trial = 0; trial < 100; ++trial) {
    const int p = gen::uniform(rng, 0, n);
    const int q = gen::uniform(rng, 0, n - p);
    const DifferentialForm a = gen::random_form(rng, vars, p);
    const DifferentialForm b = gen::random_form(rng, vars, q);
    const Expression sign = (p * q) % 2 == 0 ? 1 : -1;
    ASSERT_TRUE((wedge(a, b) - sign * wedge(b, a)).empty());
    const Expression lsign = p % 2 == 0 ? 1 : -1;
    const DifferentialForm lhs = exterior_derivative(wedge(a, b));
    const DifferentialForm rhs = wedge(exterior_derivative(a), b) + lsign * wedge(a, exterior_derivative(b));
    ASSERT_TRUE((lhs - rhs).empty()) << a.to_string() << " | " << b.to_string();
  }
}

TEST_P(FormsProperty, WedgeMatchesNaiveExpansion) {
  const int n = GetParam();
  const VariableSet vars = gen::coords(n);
  gen::Rng rng(300 + n);
  for (int trial = 0; trial < 50; ++trial) {
    const int p = gen::uniform(rng, 0, n);
    const int q = gen::uniform(rng, 0, n - p);
    const DifferentialForm a = gen::random_form(rng, vars, p);
    const DifferentialForm b = gen::random_form(rng, vars, q);
    const DifferentialForm w = wedge(a, b);
    for (int k = 0; k < 5; ++k) {
      const auto pt = gen::random_point(rng, n);
      const auto expected = oracle::naive_wedge(oracle::evaluate(a, pt), p, oracle::evaluate(b, pt), q, n);
      ASSERT_LE(oracle::max_relative_gap(oracle::evaluate(w, pt), expected), 1e-9);
    }
  }
}

TEST_P(FormsProperty, DerivativeMatchesFiniteDifferences) {
  const int n = GetParam();
  const VariableSet vars = gen::coords(n);
  gen::Rng rng(400 + n);
  for (int p = 0; p < n; ++p) {
    for (int trial = 0; trial < 10; ++trial) {
      const DifferentialForm a = gen::random_form(rng, vars, p, 3, gen::chance(rng, 0.3));
      const DifferentialForm da = exterior_derivative(a);
      for (int k = 0; k < 50; ++k) {
        const auto pt = gen::random_point(rng, n, -1.0, 1.0);
        ASSERT_LE(oracle::max_relative_gap(oracle::evaluate(da, pt), oracle::fd_exterior_derivative(a, pt)), 1e-6)
            << a.to_string();
      }
    }
  }
}

TEST_P(FormsProperty, CommutatorZeroIffDerivativeZero) {
  const int n = GetParam();
  const VariableSet vars = gen::coords(n);
  gen::Rng rng(500 + n);
  for (int trial = 0; trial < 100; ++trial) {
    const DifferentialForm a = gen::chance(rng, 0.5)
                                   ? exterior_derivative(DifferentialForm::scalar(vars, gen::random_polynomial(rng, vars)))
                                   : gen::random_form(rng, vars, 1);
    const DifferentialForm one = a.empty() ? DifferentialForm(vars, 1) : a;
    EXPECT_EQ(commutator(one).is_zero(), is_zero(exterior_derivative(one)));
  }
}

TEST_P(FormsProperty, PullbackCommutesWithD) {
  const int n = GetParam();
  const VariableSet vars = gen::coords(n);
  gen::Rng rng(600 + n);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = gen::uniform(rng, 1, n - 1);
    std::vector<std::string> pnames;
    for (int k = 0; k < m; ++k) pnames.push_back("t" + std::to_string(k + 1));
    const VariableSet params(pnames);
    Parameterization chart{params, {}};
    for (int i = 0; i < n; ++i) chart.coordinates.push_back(gen::random_polynomial(rng, params, 2, 3));
    const int p = gen::uniform(rng, 0, 1);
    const DifferentialForm a = gen::random_form(rng, vars, p, 2);
    const DifferentialForm lhs = exterior_derivative(pullback(a, chart));
    const DifferentialForm rhs = pullback(exterior_derivative(a), chart);
    ASSERT_EQ(is_zero(lhs - rhs), ZeroVerdict::Zero) << a.to_string();
  }
}

INSTANTIATE_TEST_SUITE_P(Dimensions, FormsProperty, ::testing::Values(2, 3, 4));
