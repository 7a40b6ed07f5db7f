#include <gtest/gtest.h>

#include <cmath>

#include "skewforms/balance.hpp"
#include "skewforms/errors.hpp"
#include "support/generators.hpp"

using namespace skewforms;

namespace {

const VariableSet xi{"xi1", "xi2"};
const Expression x1 = Expression::variable("xi1");
const Expression x2 = Expression::variable("xi2");

ScanOptions square() {
  ScanOptions o;
  o.box = Box::cube(2);
  return o;
}

}  // namespace

TEST(Balance, SymmetricActionsAreIdentical) {
  const EvolutionaryRelation r = build_relation({xi, {x2, x1}, std::nullopt});
  EXPECT_EQ(r.verdict, RelationVerdict::Identical);
  ASSERT_TRUE(r.psi.has_value());
  EXPECT_TRUE(r.psi_reconstructed);
  EXPECT_EQ(r.psi->to_string(), "xi1*xi2");
  ASSERT_TRUE(r.relation.has_value());
  EXPECT_EQ(is_zero(exterior_derivative(DifferentialForm::scalar(xi, *r.psi)) - r.omega), ZeroVerdict::Zero);

  const EquilibriumReport e = equilibrium_scan(r, square());
  EXPECT_EQ(e.state, "equilibrium everywhere");
  EXPECT_EQ(e.structure.status, StructureStatus::WholeDomain);
}

TEST(Balance, AntisymmetricActionsStayNonequilibrium) {
  const EvolutionaryRelation r = build_relation({xi, {x2, -x1}, std::nullopt});
  EXPECT_EQ(r.verdict, RelationVerdict::Nonidentical);
  EXPECT_EQ(r.commutator.component(1, 2), Expression(-2));
  EXPECT_FALSE(r.psi.has_value());
  const EquilibriumReport e = equilibrium_scan(r, square());
  EXPECT_EQ(e.state, "state remains nonequilibrium");
  EXPECT_TRUE(e.structure.points.empty());
}

TEST(Balance, QuadraticActionsRealizeLocus) {
  const EvolutionaryRelation r = build_relation({xi, {x2 * x2, x1 * x2}, std::nullopt});
  EXPECT_EQ(r.verdict, RelationVerdict::Nonidentical);
  const EquilibriumReport e = equilibrium_scan(r, square());
  EXPECT_EQ(e.state, "locally equilibrium pseudostructure");
  ASSERT_EQ(e.structure.components.size(), 1u);
  EXPECT_EQ(e.structure.components[0].description(), "xi2 = 0");
  EXPECT_FALSE(e.structure.points.empty());
  for (const auto& p : e.structure.points) {
    EXPECT_LT(std::abs(evaluate(r.commutator.component(1, 2), xi, p)), 1e-6);
  }
}

TEST(Balance, GivenPsiIsChecked) {
  const EvolutionaryRelation good = build_relation({xi, {x2, x1}, x1 * x2 + 5});
  EXPECT_EQ(good.verdict, RelationVerdict::Identical);
  EXPECT_FALSE(good.psi_reconstructed);

  const EvolutionaryRelation bad = build_relation({xi, {x2, x1}, x1 * x1});
  EXPECT_EQ(bad.verdict, RelationVerdict::Nonidentical);
  ASSERT_TRUE(bad.relation.has_value());
  EXPECT_EQ(bad.relation->eta_closed, ZeroVerdict::Zero);
  EXPECT_EQ(bad.relation->residual_zero, ZeroVerdict::Nonzero);
}

TEST(Balance, PsiOnLocus) {
  // omega = xi2^2 dxi1 + xi1 xi2 dxi2 pulls back to 0 on xi2 = 0, as does d(psi) for psi = xi2^2.
  const EvolutionaryRelation r = build_relation({xi, {x2 * x2, x1 * x2}, x2 * x2});
  const EquilibriumReport e = equilibrium_scan(r, square());
  ASSERT_TRUE(e.psi_restricted.has_value());
  EXPECT_EQ(*e.psi_restricted, ZeroVerdict::Zero);
}

TEST(Balance, Validation) {
  EXPECT_THROW(build_relation({xi, {x1}, std::nullopt}), InvalidArgument);
  EXPECT_THROW(build_relation({xi, {x1, x2, x1}, std::nullopt}), InvalidArgument);
}

// Relabelling actions as a 1-form must not change the detected locus.
TEST(BalanceProperty, ScanAgreesWithFormScan) {
  gen::Rng rng(51);
  ScanOptions opts = square();
  opts.grid = 41;
  for (int trial = 0; trial < 40; ++trial) {
    BalanceSystem s{xi, {gen::random_polynomial(rng, xi, 2, 3), gen::random_polynomial(rng, xi, 2, 3)}, std::nullopt};
    const EvolutionaryRelation r = build_relation(s);
    const EquilibriumReport e = equilibrium_scan(r, opts);
    const StructureReport direct =
        find_pseudostructure(DifferentialForm::one_form(xi, s.actions), Metric::euclidean(xi), opts);
    EXPECT_EQ(e.structure.status, direct.status);
    EXPECT_EQ(e.structure.points, direct.points);
    EXPECT_EQ(r.verdict == RelationVerdict::Identical, direct.status == StructureStatus::WholeDomain);
  }
}

TEST(BalanceProperty, GradientActionsReconstructPotential) {
  gen::Rng rng(52);
  for (int trial = 0; trial < 60; ++trial) {
    const VariableSet vars = gen::coords(gen::uniform(rng, 2, 4));
    const Expression psi = gen::random_polynomial(rng, vars);
    std::vector<Expression> actions;
    for (int i = 1; i <= vars.dimension(); ++i) actions.push_back(differentiate(psi, vars.name(i)));
    const EvolutionaryRelation r = build_relation({vars, actions, std::nullopt});
    ASSERT_EQ(r.verdict, RelationVerdict::Identical) << psi.to_string();
    ASSERT_TRUE(r.psi.has_value());
    // Equal up to an additive constant.
    EXPECT_TRUE(exterior_derivative(DifferentialForm::scalar(vars, *r.psi - psi)).empty());
  }
}
