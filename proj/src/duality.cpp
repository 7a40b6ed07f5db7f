#include "skewforms/duality.hpp"

#include <algorithm>

#include "skewforms/errors.hpp"

namespace skewforms {

Metric::Metric(VariableSet vars, std::vector<int> signature) : vars_(std::move(vars)), signature_(std::move(signature)) {
  if (signature_.size() != vars_.size()) {
    throw InvalidArgument("metric signature has " + std::to_string(signature_.size()) + " entries, expected " +
                          std::to_string(vars_.size()));
  }
  for (int s : signature_) {
    if (s != 1 && s != -1) throw InvalidArgument("metric signature entries must be +1 or -1");
  }
}

Metric Metric::euclidean(VariableSet vars) {
  std::vector<int> ones(vars.size(), 1);
  return Metric(std::move(vars), std::move(ones));
}

int Metric::determinant_sign() const {
  int s = 1;
  for (int e : signature_) s *= e;
  return s;
}

DifferentialForm hodge_star(const DifferentialForm& a, const Metric& g) {
  if (a.vars() != g.vars()) throw InvalidArgument("metric and form live over different coordinate sets");
  const int n = a.dimension();
  DifferentialForm out(a.vars(), n - a.degree());
  for (const auto& [indices, c] : a.terms()) {
    IndexTuple complement;
    for (int i = 1; i <= n; ++i) {
      if (std::find(indices.begin(), indices.end(), i) == indices.end()) complement.push_back(i);
    }
    IndexTuple joined = indices;
    joined.insert(joined.end(), complement.begin(), complement.end());
    int sign = sort_with_sign(joined);
    for (int i : indices) sign *= g.entry(i);
    out.add_term(complement, sign > 0 ? c : -c);
  }
  return out;
}

ZeroVerdict dual_closure_check(const DifferentialForm& a, const Metric& g, const ZeroTestOptions& options) {
  return is_zero(exterior_derivative(hodge_star(a, g)), options);
}

}  // namespace skewforms
