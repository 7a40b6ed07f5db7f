#ifndef SKEWFORMS_ANALYSIS_HPP
#define SKEWFORMS_ANALYSIS_HPP

// Classification engines built on the exterior algebra: closure and
// exactness, identical versus nonidentical relations, Frobenius
// integrability, characteristic curves of a 0-form, pseudostructure (locus)
// detection, numeric Stokes checks and the (p, k, n) structure table.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewforms/duality.hpp"
#include "skewforms/forms.hpp"

namespace skewforms {

enum class Truth : std::uint8_t { True, False, Unknown };
std::string_view to_string(Truth t);

/// Zero verdict of a differential read as "is closed".
Truth closed_from(ZeroVerdict v);

struct ClosureVerdict {
  Truth closed = Truth::Unknown;
  Truth exact = Truth::Unknown;
  /// Present only when exact is True and a closed-form potential was found.
  std::optional<DifferentialForm> potential;
  DifferentialForm differential;
  std::string notes;
};

/// Closure from the zero test of d(a). For closed forms of degree >= 1 the
/// potential is reconstructed with the homotopy operator centered at the
/// origin (star-shaped domain assumed) and verified symbolically.
ClosureVerdict classify_closure(const DifferentialForm& a, const ZeroTestOptions& options = {});

/// Homotopy operator K(a) = sum_I int_0^1 t^(p-1) a_I(t x) dt * i_X dx^I with
/// X the radial field. Returns nullopt when some coefficient is not
/// polynomial in t along rays.
std::optional<DifferentialForm> homotopy_potential(const DifferentialForm& a);

enum class RelationVerdict : std::uint8_t { Identical, Nonidentical, Unknown };
std::string_view to_string(RelationVerdict v);

/// The relation d(phi) = eta.
struct Relation {
  DifferentialForm phi;
  DifferentialForm eta;
  DifferentialForm residual;          // d(phi) - eta
  DifferentialForm eta_differential;  // d(eta)
  ZeroVerdict residual_zero = ZeroVerdict::Unknown;
  ZeroVerdict eta_closed = ZeroVerdict::Unknown;
  RelationVerdict verdict = RelationVerdict::Unknown;
  std::optional<Commutator> eta_commutator;  // when eta has degree 1
};

/// Throws InvalidArgument when deg(eta) != deg(phi) + 1 or the coordinate
/// sets differ.
Relation classify_relation(const DifferentialForm& phi, const DifferentialForm& eta,
                           const ZeroTestOptions& options = {});

enum class Integrability : std::uint8_t { Integrable, Nonintegrable, Unknown };
std::string_view to_string(Integrability v);

struct FrobeniusResult {
  Integrability verdict = Integrability::Unknown;
  DifferentialForm obstruction;  // a ^ da
};

/// Throws InvalidArgument unless a is a 1-form with n >= 3.
FrobeniusResult frobenius_test(const DifferentialForm& a, const ZeroTestOptions& options = {});

struct CharacteristicCurve {
  std::vector<std::array<double, 2>> points;
  bool aborted = false;
  std::string reason;
  double max_drift = 0.0;  // max |phi(point) - phi(start)|
};

/// RK4 integration of the direction field (-phi_y, phi_x), which keeps phi
/// constant. Stops early, keeping the partial curve, when the gradient norm
/// drops below 1e-12 or evaluation fails. Throws InvalidArgument unless
/// vars has two coordinates, steps >= 0 and h > 0.
CharacteristicCurve characteristic_curves(const Expression& phi, const VariableSet& vars,
                                          std::array<double, 2> start, int steps, double h);

struct Rect {
  double x0 = 0.0;
  double x1 = 1.0;
  double y0 = 0.0;
  double y1 = 1.0;
};

struct StokesResult {
  double boundary = 0.0;
  double area = 0.0;
  double difference = 0.0;
};

/// Counterclockwise boundary integral versus the area integral of the dw
/// coefficient, both with composite Gauss-Legendre rules (64 nodes per edge,
/// 64 x 64 on the rectangle). Throws InvalidArgument unless a is a 1-form
/// over two coordinates; DomainError propagates.
StokesResult stokes_check(const DifferentialForm& a, const Rect& rect);

struct TableRow {
  int k = 0;
  int dimension = 0;
  bool exceeds_space = false;  // dimension > n
};

/// Rows k = p down to 0 with pseudostructure dimension n + 1 - k.
/// Throws InvalidArgument unless 0 <= p <= 3 and n >= 1.
std::vector<TableRow> classification_table(int p, int n);

// --- pseudostructure detection ---------------------------------------------

struct Box {
  std::vector<std::pair<double, double>> ranges;
  static Box cube(int n, double lo = -1.0, double hi = 1.0);
};

struct ScanOptions {
  Box box;
  int grid = 101;
  double tol = 1e-6;
  ZeroTestOptions zero;
};

/// One symbolic branch of the locus: variable = value(other coordinates).
struct LocusComponent {
  std::string variable;
  Expression value;
  Parameterization chart;
  DifferentialForm restricted_form;
  ZeroVerdict restricted_closed = ZeroVerdict::Unknown;

  std::string description() const { return variable + " = " + value.to_string(); }
};

enum class StructureStatus : std::uint8_t { Realized, WholeDomain, None };
std::string_view to_string(StructureStatus s);

struct StructureReport {
  StructureStatus status = StructureStatus::None;
  Commutator commutator;
  std::vector<LocusComponent> components;
  /// Grid points (aligned with the form's coordinates) where every commutator
  /// component is below the tolerance.
  std::vector<std::vector<double>> points;
  std::optional<DifferentialForm> restricted_form;
  /// Coefficient of d(*a).
  Expression dual_condition_residual;
  /// Max |K| over grid nodes adjacent to the locus.
  double intensity = 0.0;
};

/// Zero locus of the commutator of a 1-form with n in {2, 3}: symbolic
/// branches by factoring out monomial content and solving linear factors,
/// numeric points by sign changes on the grid refined with bisection.
/// Throws InvalidArgument on bad degree, dimension, box or grid.
StructureReport find_pseudostructure(const DifferentialForm& a, const Metric& g, const ScanOptions& options);

}  // namespace skewforms

#endif  // SKEWFORMS_ANALYSIS_HPP
