#ifndef SKEWFORMS_DUALITY_HPP
#define SKEWFORMS_DUALITY_HPP

#include <vector>

#include "skewforms/forms.hpp"

namespace skewforms {

/// Constant diagonal metric with entries +1 or -1.
class Metric {
 public:
  Metric() = default;
  /// Throws InvalidArgument on a length mismatch or an entry other than +-1.
  Metric(VariableSet vars, std::vector<int> signature);

  static Metric euclidean(VariableSet vars);

  const VariableSet& vars() const { return vars_; }
  const std::vector<int>& signature() const { return signature_; }
  /// 1-based.
  int entry(int index) const { return signature_.at(static_cast<std::size_t>(index - 1)); }
  /// Product of all signature entries.
  int determinant_sign() const;

  friend bool operator==(const Metric&, const Metric&) = default;

 private:
  VariableSet vars_;
  std::vector<int> signature_;
};

/// Hodge star: *(dx^I) = sign(I, I^c) * prod_{i in I} g_ii * dx^{I^c}, where
/// sign(I, I^c) is the parity of the permutation (I, I^c) of (1..n).
DifferentialForm hodge_star(const DifferentialForm& a, const Metric& g);

/// Zero verdict of d(*a): Zero means the dual form is closed.
ZeroVerdict dual_closure_check(const DifferentialForm& a, const Metric& g,
                               const ZeroTestOptions& options = {});

}  // namespace skewforms

#endif  // SKEWFORMS_DUALITY_HPP
