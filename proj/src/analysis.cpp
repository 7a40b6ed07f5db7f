#include "skewforms/analysis.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <random>

#include "skewforms/errors.hpp"

namespace skewforms {

std::string_view to_string(Truth t) {
  switch (t) {
    case Truth::True: return "true";
    case Truth::False: return "false";
    case Truth::Unknown: return "unknown";
  }
  return "unknown";
}

Truth closed_from(ZeroVerdict v) {
  switch (v) {
    case ZeroVerdict::Zero: return Truth::True;
    case ZeroVerdict::Nonzero: return Truth::False;
    case ZeroVerdict::Unknown: return Truth::Unknown;
  }
  return Truth::Unknown;
}

std::string_view to_string(RelationVerdict v) {
  switch (v) {
    case RelationVerdict::Identical: return "identical";
    case RelationVerdict::Nonidentical: return "nonidentical";
    case RelationVerdict::Unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(Integrability v) {
  switch (v) {
    case Integrability::Integrable: return "integrable";
    case Integrability::Nonintegrable: return "nonintegrable";
    case Integrability::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

// Composite Gauss-Legendre: 8 panels of 8 nodes.
template <class F>
double integrate(F&& f, double a, double b) {
  constexpr int kPanels = 8;
  const double width = (b - a) / kPanels;
  double total = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const double lo = a + width * i;
    total += boost::math::quadrature::gauss<double, 8>::integrate(f, lo, lo + width);
  }
  return total;
}

std::string fresh_name(const VariableSet& vars, std::string base) {
  while (vars.contains(base)) base += '_';
  return base;
}

// int_0^1 e dt for e polynomial in t.
std::optional<Expression> integrate_unit_interval(const Expression& e, const std::string& t) {
  const auto terms = e.kind() == NodeKind::Sum ? e.operands() : std::span<const Expression>(&e, 1);
  std::vector<Expression> out;
  for (const auto& term : terms) {
    const Rational k = variable_exponent(term, t);
    if (k.get_den() != 1 || k < 0) return std::nullopt;
    Expression rest = term * pow(Expression::variable(t), -k);
    if (depends_on(rest, t)) return std::nullopt;
    out.push_back(rest * Expression(Rational(1) / (k + 1)));
  }
  return Expression::sum(std::move(out));
}

// Numeric homotopy integral of a 1-form, checked against central differences.
bool numeric_potential_matches(const DifferentialForm& a) {
  const int n = a.dimension();
  auto potential = [&](const std::vector<double>& x) {
    return integrate(
        [&](double t) {
          std::vector<double> tx(x);
          for (double& v : tx) v *= t;
          double s = 0.0;
          for (const auto& [indices, c] : a.terms()) s += x[static_cast<std::size_t>(indices[0] - 1)] * evaluate(c, a.vars(), tx);
          return s;
        },
        0.0, 1.0);
  };
  std::mt19937_64 rng(0x51f15eedULL);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  constexpr double h = 1e-5;
  int valid = 0;
  for (int attempt = 0; attempt < 64 && valid < 16; ++attempt) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = coord(rng);
    try {
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        std::vector<double> xp(x), xm(x);
        xp[static_cast<std::size_t>(i)] += h;
        xm[static_cast<std::size_t>(i)] -= h;
        const double fd = (potential(xp) - potential(xm)) / (2 * h);
        const double ai = evaluate(a.coefficient({i + 1}), a.vars(), x);
        ok = std::abs(fd - ai) <= 1e-5 * (1.0 + std::abs(ai));
      }
      ++valid;
      if (!ok) return false;
    } catch (const DomainError&) {
    }
  }
  return valid >= 8;
}

}  // namespace

std::optional<DifferentialForm> homotopy_potential(const DifferentialForm& a) {
  const int p = a.degree();
  if (p == 0) throw InvalidArgument("a 0-form has no potential");
  const std::string t = fresh_name(a.vars(), "t");
  const Expression tv = Expression::variable(t);
  std::map<std::string, Expression, std::less<>> scaled;
  for (const auto& name : a.vars().names()) scaled[name] = tv * Expression::variable(name);

  DifferentialForm out(a.vars(), p - 1);
  for (const auto& [indices, c] : a.terms()) {
    auto integral = integrate_unit_interval(substitute(c, scaled) * pow(tv, Rational(p - 1)), t);
    if (!integral) return std::nullopt;
    for (std::size_t k = 0; k < indices.size(); ++k) {
      IndexTuple rest = indices;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
      const Expression term = a.vars().coordinate(indices[k]) * *integral;
      out.add_term(std::move(rest), k % 2 == 0 ? term : -term);
    }
  }
  return out;
}

ClosureVerdict classify_closure(const DifferentialForm& a, const ZeroTestOptions& options) {
  ClosureVerdict v;
  v.differential = exterior_derivative(a);
  v.closed = closed_from(is_zero(v.differential, options));
  if (v.closed != Truth::True) {
    v.exact = v.closed;  // an exact form is closed
    return v;
  }
  if (a.degree() == 0) {
    v.exact = a.empty() ? Truth::True : Truth::False;
    if (!a.empty()) v.notes = "a nonzero 0-form is not a differential";
    return v;
  }
  if (auto potential = homotopy_potential(a)) {
    switch (is_zero(exterior_derivative(*potential) - a, options)) {
      case ZeroVerdict::Zero:
        v.exact = Truth::True;
        v.potential = std::move(potential);
        break;
      case ZeroVerdict::Nonzero:
        v.exact = Truth::Unknown;
        v.notes = "homotopy potential does not reproduce the form; domain is not star-shaped about the origin";
        break;
      case ZeroVerdict::Unknown:
        v.exact = Truth::Unknown;
        v.notes = "homotopy potential could not be verified";
        break;
    }
    return v;
  }
  if (a.degree() == 1) {
    if (numeric_potential_matches(a)) {
      v.exact = Truth::True;
      v.notes = "no closed-form potential; homotopy integral verified numerically";
    } else {
      v.exact = Truth::Unknown;
      v.notes = "homotopy integral fails numerically; coefficients singular along rays from the origin";
    }
    return v;
  }
  v.exact = Truth::Unknown;
  v.notes = "non-polynomial coefficients; potential not reconstructed";
  return v;
}

Relation classify_relation(const DifferentialForm& phi, const DifferentialForm& eta, const ZeroTestOptions& options) {
  if (phi.vars() != eta.vars()) throw InvalidArgument("relation sides live over different coordinate sets");
  const bool degrees_match = eta.degree() == phi.degree() + 1 || phi.empty() || eta.empty();
  if (!degrees_match) {
    throw InvalidArgument("relation needs deg(eta) = deg(phi) + 1, got " + std::to_string(phi.degree()) + " and " +
                          std::to_string(eta.degree()));
  }
  Relation r;
  r.phi = phi;
  r.eta = eta;
  r.residual = exterior_derivative(phi) - eta;
  r.eta_differential = exterior_derivative(eta);
  r.eta_closed = is_zero(r.eta_differential, options);
  r.residual_zero = is_zero(r.residual, options);
  if (r.eta_closed == ZeroVerdict::Nonzero || r.residual_zero == ZeroVerdict::Nonzero) {
    r.verdict = RelationVerdict::Nonidentical;
  } else if (r.eta_closed == ZeroVerdict::Zero && r.residual_zero == ZeroVerdict::Zero) {
    r.verdict = RelationVerdict::Identical;
  } else {
    r.verdict = RelationVerdict::Unknown;
  }
  if (eta.degree() == 1) r.eta_commutator = Commutator(eta);
  return r;
}

FrobeniusResult frobenius_test(const DifferentialForm& a, const ZeroTestOptions& options) {
  if (a.degree() != 1) throw InvalidArgument("Frobenius test needs a 1-form");
  if (a.dimension() < 3) throw InvalidArgument("Frobenius test needs at least 3 coordinates");
  FrobeniusResult r;
  r.obstruction = wedge(a, exterior_derivative(a));
  switch (is_zero(r.obstruction, options)) {
    case ZeroVerdict::Zero: r.verdict = Integrability::Integrable; break;
    case ZeroVerdict::Nonzero: r.verdict = Integrability::Nonintegrable; break;
    case ZeroVerdict::Unknown: r.verdict = Integrability::Unknown; break;
  }
  return r;
}

CharacteristicCurve characteristic_curves(const Expression& phi, const VariableSet& vars, std::array<double, 2> start,
                                          int steps, double h) {
  if (vars.dimension() != 2) throw InvalidArgument("characteristic curves need exactly 2 coordinates");
  if (steps < 0) throw InvalidArgument("step count must be nonnegative");
  if (!(h > 0.0)) throw InvalidArgument("step size must be positive");
  const Expression px = differentiate(phi, vars.name(1));
  const Expression py = differentiate(phi, vars.name(2));
  using P = std::array<double, 2>;
  auto field = [&](const P& p) -> P {
    const double gx = evaluate(px, vars, p);
    const double gy = evaluate(py, vars, p);
    if (std::hypot(gx, gy) < 1e-12) throw DomainError("gradient vanishes (critical point)");
    return {-gy, gx};
  };

  CharacteristicCurve curve;
  curve.points.reserve(static_cast<std::size_t>(steps) + 1);
  curve.points.push_back(start);
  P p = start;
  try {
    const double phi0 = evaluate(phi, vars, p);
    for (int i = 0; i < steps; ++i) {
      const P k1 = field(p);
      const P k2 = field({p[0] + 0.5 * h * k1[0], p[1] + 0.5 * h * k1[1]});
      const P k3 = field({p[0] + 0.5 * h * k2[0], p[1] + 0.5 * h * k2[1]});
      const P k4 = field({p[0] + h * k3[0], p[1] + h * k3[1]});
      p = {p[0] + h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
           p[1] + h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])};
      curve.points.push_back(p);
      curve.max_drift = std::max(curve.max_drift, std::abs(evaluate(phi, vars, p) - phi0));
    }
  } catch (const DomainError& e) {
    curve.aborted = true;
    curve.reason = e.what();
  }
  return curve;
}

StokesResult stokes_check(const DifferentialForm& a, const Rect& rect) {
  if (a.degree() != 1 || a.dimension() != 2) throw InvalidArgument("Stokes check needs a 1-form over 2 coordinates");
  const Expression ax = a.coefficient({1});
  const Expression ay = a.coefficient({2});
  const Expression k = Commutator(a).component(1, 2);
  const VariableSet& vars = a.vars();
  auto at = [&](const Expression& e, double x, double y) {
    const std::array<double, 2> p{x, y};
    return evaluate(e, vars, p);
  };

  StokesResult r;
  r.boundary = integrate([&](double x) { return at(ax, x, rect.y0); }, rect.x0, rect.x1) +
               integrate([&](double y) { return at(ay, rect.x1, y); }, rect.y0, rect.y1) -
               integrate([&](double x) { return at(ax, x, rect.y1); }, rect.x0, rect.x1) -
               integrate([&](double y) { return at(ay, rect.x0, y); }, rect.y0, rect.y1);
  r.area = integrate(
      [&](double y) { return integrate([&](double x) { return at(k, x, y); }, rect.x0, rect.x1); }, rect.y0, rect.y1);
  r.difference = std::abs(r.boundary - r.area);
  return r;
}

std::vector<TableRow> classification_table(int p, int n) {
  if (p < 0 || p > 3) throw InvalidArgument("form degree p must be in 0..3");
  if (n < 1) throw InvalidArgument("dimension n must be at least 1");
  std::vector<TableRow> rows;
  for (int k = p; k >= 0; --k) {
    const int dim = n + 1 - k;
    rows.push_back({k, dim, dim > n});
  }
  return rows;
}

}  // namespace skewforms
