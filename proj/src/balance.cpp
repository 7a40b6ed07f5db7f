#include "skewforms/balance.hpp"

#include "skewforms/errors.hpp"

namespace skewforms {

EvolutionaryRelation build_relation(const BalanceSystem& system, const ZeroTestOptions& options) {
  if (static_cast<int>(system.actions.size()) != system.vars.dimension()) {
    throw InvalidArgument("balance system needs " + std::to_string(system.vars.dimension()) + " actions, got " +
                          std::to_string(system.actions.size()));
  }
  EvolutionaryRelation out;
  out.omega = DifferentialForm::one_form(system.vars, system.actions);
  out.commutator = Commutator(out.omega);
  const ZeroVerdict k = out.commutator.is_zero(options);

  if (system.psi) {
    out.psi = system.psi;
    out.relation = classify_relation(DifferentialForm::scalar(system.vars, *system.psi), out.omega, options);
    out.verdict = out.relation->verdict;
    return out;
  }
  if (k == ZeroVerdict::Nonzero) {
    out.verdict = RelationVerdict::Nonidentical;
    out.notes = "energy and force actions are inconsistent";
    return out;
  }
  if (k == ZeroVerdict::Unknown) {
    out.notes = "commutator zero test inconclusive";
    return out;
  }
  const ClosureVerdict closure = classify_closure(out.omega, options);
  if (closure.potential) {
    out.psi = closure.potential->coefficient({});
    out.psi_reconstructed = true;
    out.relation = classify_relation(*closure.potential, out.omega, options);
    out.verdict = out.relation->verdict;
  } else {
    out.notes = "commutator vanishes but no closed-form psi was reconstructed";
  }
  return out;
}

EquilibriumReport equilibrium_scan(const EvolutionaryRelation& relation, const ScanOptions& options) {
  EquilibriumReport out;
  out.structure = find_pseudostructure(relation.omega, Metric::euclidean(relation.omega.vars()), options);
  switch (out.structure.status) {
    case StructureStatus::Realized: out.state = "locally equilibrium pseudostructure"; break;
    case StructureStatus::WholeDomain: out.state = "equilibrium everywhere"; break;
    case StructureStatus::None: out.state = "state remains nonequilibrium"; break;
  }
  if (relation.psi && !out.structure.components.empty()) {
    const DifferentialForm dpsi = exterior_derivative(DifferentialForm::scalar(relation.omega.vars(), *relation.psi));
    std::vector<ZeroVerdict> verdicts;
    for (const auto& c : out.structure.components) {
      verdicts.push_back(is_zero(pullback(dpsi, c.chart) - pullback(relation.omega, c.chart), options.zero));
    }
    out.psi_restricted = combine(verdicts);
  }
  return out;
}

}  // namespace skewforms
