#include <algorithm>
#include <cmath>
#include <limits>

#include "skewforms/analysis.hpp"
#include "skewforms/errors.hpp"

namespace skewforms {

std::string_view to_string(StructureStatus s) {
  switch (s) {
    case StructureStatus::Realized: return "realized";
    case StructureStatus::WholeDomain: return "whole-domain";
    case StructureStatus::None: return "none";
  }
  return "none";
}

Box Box::cube(int n, double lo, double hi) {
  Box b;
  b.ranges.assign(static_cast<std::size_t>(n), {lo, hi});
  return b;
}

namespace {

std::span<const Expression> terms_of(const Expression& e) {
  return e.kind() == NodeKind::Sum ? e.operands() : std::span<const Expression>(&e, 1);
}

struct Candidate {
  std::string variable;
  Expression value;
};

// Branches x = 0 from monomial content and x = -g/c from factors c*x + g
// with c a nonzero constant and g free of x.
void collect_candidates(const Expression& k, const VariableSet& vars, std::vector<Candidate>& out) {
  Expression cofactor = k;
  for (const auto& name : vars.names()) {
    Rational content = -1;
    for (const auto& term : terms_of(k)) {
      const Rational e = variable_exponent(term, name);
      if (content < 0 || e < content) content = e;
    }
    if (content > 0 && content.get_den() == 1) {
      out.push_back({name, Expression(0)});
      cofactor = cofactor * pow(Expression::variable(name), -content);
    }
  }
  for (const auto& name : vars.names()) {
    std::vector<Expression> linear;
    std::vector<Expression> rest;
    bool ok = true;
    for (const auto& term : terms_of(cofactor)) {
      if (variable_exponent(term, name) == 1) {
        Expression c = term * pow(Expression::variable(name), Rational(-1));
        if (depends_on(c, name)) {
          ok = false;
          break;
        }
        linear.push_back(c);
      } else if (depends_on(term, name)) {
        ok = false;
        break;
      } else {
        rest.push_back(term);
      }
    }
    if (!ok || linear.empty()) continue;
    const Expression c = Expression::sum(linear);
    if (!c.is_constant() || c.is_zero_literal()) continue;
    out.push_back({name, -Expression::sum(rest) / c});
  }
}

class Grid {
 public:
  Grid(const Box& box, int n_per_axis) : box_(box), n_(n_per_axis), dim_(static_cast<int>(box.ranges.size())) {
    total_ = 1;
    for (int d = 0; d < dim_; ++d) {
      strides_.push_back(total_);
      total_ *= static_cast<std::size_t>(n_);
    }
  }

  std::size_t size() const { return total_; }
  int dim() const { return dim_; }
  int axis_index(std::size_t node, int d) const {
    return static_cast<int>((node / strides_[static_cast<std::size_t>(d)]) % static_cast<std::size_t>(n_));
  }
  std::size_t stride(int d) const { return strides_[static_cast<std::size_t>(d)]; }
  int per_axis() const { return n_; }

  std::vector<double> point(std::size_t node) const {
    std::vector<double> p(static_cast<std::size_t>(dim_));
    for (int d = 0; d < dim_; ++d) {
      const auto [lo, hi] = box_.ranges[static_cast<std::size_t>(d)];
      p[static_cast<std::size_t>(d)] = lo + (hi - lo) * axis_index(node, d) / (n_ - 1);
    }
    return p;
  }

 private:
  Box box_;
  int n_;
  int dim_;
  std::size_t total_ = 1;
  std::vector<std::size_t> strides_;
};

double safe_eval(const Expression& e, const VariableSet& vars, std::span<const double> p) {
  try {
    return evaluate(e, vars, p);
  } catch (const DomainError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

StructureReport find_pseudostructure(const DifferentialForm& a, const Metric& g, const ScanOptions& options) {
  if (a.degree() != 1) throw InvalidArgument("pseudostructure search needs a 1-form");
  const int n = a.dimension();
  if (n != 2 && n != 3) throw InvalidArgument("pseudostructure search needs 2 or 3 coordinates");
  if (static_cast<int>(options.box.ranges.size()) != n) throw InvalidArgument("box must give a range per coordinate");
  for (const auto& [lo, hi] : options.box.ranges) {
    if (!(lo < hi)) throw InvalidArgument("box ranges must satisfy lo < hi");
  }
  if (options.grid < 3) throw InvalidArgument("grid needs at least 3 points per axis");
  if (!(options.tol > 0.0)) throw InvalidArgument("tolerance must be positive");

  StructureReport report;
  report.commutator = Commutator(a);
  report.dual_condition_residual = exterior_derivative(hodge_star(a, g)).terms().empty()
                                       ? Expression(0)
                                       : exterior_derivative(hodge_star(a, g)).terms().begin()->second;

  std::vector<Expression> components;
  for (const auto& [key, k] : report.commutator.components()) components.push_back(k);

  if (report.commutator.is_zero(options.zero) == ZeroVerdict::Zero) {
    report.status = StructureStatus::WholeDomain;
    report.restricted_form = a;
    return report;
  }

  // Symbolic branches, kept only when they annihilate every component.
  std::vector<Candidate> candidates;
  for (const auto& k : components) {
    if (!k.is_zero_literal()) collect_candidates(k, a.vars(), candidates);
  }
  for (const auto& cand : candidates) {
    const bool seen = std::any_of(report.components.begin(), report.components.end(), [&](const LocusComponent& c) {
      return c.variable == cand.variable && c.value == cand.value;
    });
    if (seen) continue;
    std::map<std::string, Expression, std::less<>> sub{{cand.variable, cand.value}};
    std::vector<ZeroVerdict> verdicts;
    for (const auto& k : components) verdicts.push_back(is_zero(substitute(k, sub), options.zero));
    if (combine(verdicts) != ZeroVerdict::Zero) continue;

    LocusComponent comp;
    comp.variable = cand.variable;
    comp.value = cand.value;
    std::vector<std::string> params;
    for (const auto& name : a.vars().names()) {
      if (name != cand.variable) params.push_back(name);
      comp.chart.coordinates.push_back(name == cand.variable ? cand.value : Expression::variable(name));
    }
    comp.chart.parameters = VariableSet(params);
    comp.restricted_form = pullback(a, comp.chart);
    comp.restricted_closed = is_zero(exterior_derivative(comp.restricted_form), options.zero);
    report.components.push_back(std::move(comp));
  }
  if (!report.components.empty()) report.restricted_form = report.components.front().restricted_form;

  // Numeric scan.
  const Grid grid(options.box, options.grid);
  const VariableSet& vars = a.vars();
  const std::size_t nc = components.size();
  std::vector<double> values(grid.size() * nc);
  for (std::size_t node = 0; node < grid.size(); ++node) {
    const auto p = grid.point(node);
    for (std::size_t c = 0; c < nc; ++c) values[node * nc + c] = safe_eval(components[c], vars, p);
  }
  auto all_below = [&](std::span<const double> p) {
    for (const auto& k : components) {
      const double v = safe_eval(k, vars, p);
      if (!(std::abs(v) < options.tol)) return false;
    }
    return true;
  };

  std::vector<char> on(grid.size(), 0);
  for (std::size_t node = 0; node < grid.size(); ++node) {
    bool below = true;
    for (std::size_t c = 0; c < nc && below; ++c) below = std::abs(values[node * nc + c]) < options.tol;
    on[node] = below ? 1 : 0;
  }
  std::vector<char> near(grid.size(), 0);
  for (std::size_t node = 0; node < grid.size(); ++node) {
    if (on[node]) {
      report.points.push_back(grid.point(node));
      near[node] = 1;
    }
    for (int d = 0; d < grid.dim(); ++d) {
      if (grid.axis_index(node, d) + 1 >= grid.per_axis()) continue;
      const std::size_t other = node + grid.stride(d);
      // A crossing at a node is already recorded as that node.
      if (on[node] || on[other]) continue;
      for (std::size_t c = 0; c < nc; ++c) {
        double fa = values[node * nc + c];
        const double fb = values[other * nc + c];
        if (!(fa * fb < 0.0)) continue;
        auto lo = grid.point(node);
        auto hi = grid.point(other);
        std::vector<double> mid(lo.size());
        for (int it = 0; it < 200; ++it) {
          for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (lo[i] + hi[i]);
          const double fm = safe_eval(components[c], vars, mid);
          if (!std::isfinite(fm) || std::abs(fm) < options.tol * 1e-3) break;
          if ((fm < 0.0) == (fa < 0.0)) {
            lo = mid;
            fa = fm;
          } else {
            hi = mid;
          }
        }
        if (all_below(mid)) {
          report.points.push_back(mid);
          near[node] = 1;
          near[other] = 1;
        }
      }
    }
  }

  std::sort(report.points.begin(), report.points.end());
  report.points.erase(std::unique(report.points.begin(), report.points.end(),
                                  [](const std::vector<double>& u, const std::vector<double>& v) {
                                    for (std::size_t i = 0; i < u.size(); ++i) {
                                      if (std::abs(u[i] - v[i]) > 1e-12) return false;
                                    }
                                    return true;
                                  }),
                      report.points.end());

  // Intensity: largest |K| among grid neighbours of locus-adjacent nodes.
  for (std::size_t node = 0; node < grid.size(); ++node) {
    if (!near[node]) continue;
    std::vector<std::size_t> hood{node};
    for (int d = 0; d < grid.dim(); ++d) {
      const std::size_t count = hood.size();
      for (std::size_t i = 0; i < count; ++i) {
        const int idx = grid.axis_index(hood[i], d);
        if (idx > 0) hood.push_back(hood[i] - grid.stride(d));
        if (idx + 1 < grid.per_axis()) hood.push_back(hood[i] + grid.stride(d));
      }
    }
    for (std::size_t m : hood) {
      for (std::size_t c = 0; c < nc; ++c) {
        const double v = std::abs(values[m * nc + c]);
        if (std::isfinite(v)) report.intensity = std::max(report.intensity, v);
      }
    }
  }

  report.status = report.points.empty() ? StructureStatus::None : StructureStatus::Realized;
  return report;
}

}  // namespace skewforms
