#ifndef SKEWFORMS_BALANCE_HPP
#define SKEWFORMS_BALANCE_HPP

// Evolutionary relations assembled from balance-law action coefficients:
// omega = A_mu dxi^mu compared against the differential of a state
// functional psi, and the scan for loci where omega closes.

#include <optional>
#include <string>
#include <vector>

#include "skewforms/analysis.hpp"

namespace skewforms {

/// A_1 is the energy action, A_2..A_n the force actions; the roles are labels.
struct BalanceSystem {
  VariableSet vars;
  std::vector<Expression> actions;
  std::optional<Expression> psi;
};

struct EvolutionaryRelation {
  DifferentialForm omega;
  Commutator commutator;
  int degree = 1;
  RelationVerdict verdict = RelationVerdict::Unknown;
  /// d(psi) = omega, present when psi was given or reconstructed.
  std::optional<Relation> relation;
  std::optional<Expression> psi;
  bool psi_reconstructed = false;
  std::string notes;
};

/// Throws InvalidArgument when the number of actions differs from n.
EvolutionaryRelation build_relation(const BalanceSystem& system, const ZeroTestOptions& options = {});

struct EquilibriumReport {
  StructureReport structure;
  /// "locally equilibrium pseudostructure", "equilibrium everywhere" or
  /// "state remains nonequilibrium".
  std::string state;
  /// Zero verdict of pullback(d psi) - pullback(omega) over every symbolic
  /// locus component; present when psi is known and a component was found.
  std::optional<ZeroVerdict> psi_restricted;
};

EquilibriumReport equilibrium_scan(const EvolutionaryRelation& relation, const ScanOptions& options);

}  // namespace skewforms

#endif  // SKEWFORMS_BALANCE_HPP
