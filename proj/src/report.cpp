#include "skewforms/report.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "json.hpp"

#include "skewforms/balance.hpp"
#include "skewforms/errors.hpp"

namespace skewforms {

namespace {

using nlohmann::json;

std::string num(double v, const char* fmt = "%.12g") {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string small(double v) { return num(v, "%.3g"); }

// Collects either text lines or JSON records.
class Sink {
 public:
  explicit Sink(OutputFormat format) : format_(format) {}

  bool json_mode() const { return format_ == OutputFormat::JsonLines; }
  void line(const std::string& text) {
    if (!json_mode()) out_ += text + '\n';
  }
  void record(json j) {
    if (json_mode()) out_ += j.dump() + '\n';
  }
  void unknown() { has_unknown_ = true; }

  RunResult finish() { return {std::move(out_), has_unknown_}; }

 private:
  OutputFormat format_;
  std::string out_;
  bool has_unknown_ = false;
};

json header(std::string_view command, const std::string& name) {
  return json{{"command", command}, {"name", name}};
}

const Declaration& lookup(const Document& doc, const std::string& name) {
  const Declaration* d = doc.find(name);
  if (!d) throw NameNotFound(name);
  return *d;
}

// Forms and scalars both act as forms.
std::optional<DifferentialForm> as_form(const Document& doc, const Declaration& d) {
  if (const auto* f = std::get_if<FormDecl>(&d)) return f->form;
  if (const auto* s = std::get_if<ScalarDecl>(&d)) return DifferentialForm::scalar(doc.vars, s->value);
  return std::nullopt;
}

struct Named {
  std::string name;
  DifferentialForm form;
};

// Named forms selected by the options; when no names are given, every
// declaration passing the filter.
std::vector<Named> select_forms(const Document& doc, const RunOptions& opts,
                                const std::function<bool(const DifferentialForm&)>& accept,
                                const std::string& wanted) {
  std::vector<Named> out;
  if (opts.names.empty()) {
    for (const auto& d : doc.declarations) {
      auto f = as_form(doc, d);
      if (f && accept(*f)) out.push_back({declaration_name(d), *f});
    }
    return out;
  }
  for (const auto& name : opts.names) {
    auto f = as_form(doc, lookup(doc, name));
    if (!f || !accept(*f)) throw InvalidArgument(name + " is not " + wanted);
    out.push_back({name, *f});
  }
  return out;
}

template <typename T>
std::vector<const T*> select_decls(const Document& doc, const RunOptions& opts, const std::string& wanted) {
  std::vector<const T*> out;
  if (opts.names.empty()) {
    for (const auto& d : doc.declarations) {
      if (const auto* t = std::get_if<T>(&d)) out.push_back(t);
    }
    return out;
  }
  for (const auto& name : opts.names) {
    const auto* t = std::get_if<T>(&lookup(doc, name));
    if (!t) throw InvalidArgument(name + " is not " + wanted);
    out.push_back(t);
  }
  return out;
}

bool any_form(const DifferentialForm&) { return true; }
bool one_form(const DifferentialForm& f) { return f.degree() == 1 || (f.empty() && f.degree() <= 1); }

std::string commutator_text(const Commutator& k) {
  std::string out;
  for (const auto& [key, value] : k.components()) {
    if (!out.empty()) out += "; ";
    out += k.label(key.first, key.second) + " = " + value.to_string();
  }
  return out;
}

json commutator_json(const Commutator& k) {
  json j = json::object();
  for (const auto& [key, value] : k.components()) j[k.label(key.first, key.second)] = value.to_string();
  return j;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

ScanOptions scan_options(const RunOptions& opts, int n) {
  ScanOptions s;
  s.box = opts.box ? *opts.box : Box::cube(n);
  s.grid = opts.grid;
  s.tol = opts.tol;
  return s;
}

void locus_lines(Sink& sink, const StructureReport& r, const std::string& indent) {
  for (const auto& c : r.components) {
    sink.line(indent + "locus: " + c.description() + "; restricted form " + c.restricted_form.to_string() + " (" +
              (c.restricted_closed == ZeroVerdict::Zero      ? "closed"
               : c.restricted_closed == ZeroVerdict::Nonzero ? "not closed"
                                                             : "closure unknown") +
              ")");
  }
  if (r.components.empty() && r.status == StructureStatus::Realized) sink.line(indent + "locus: numeric only");
  sink.line(indent + "points on locus: " + std::to_string(r.points.size()));
  sink.line(indent + "intensity: " + num(r.intensity));
}

json locus_json(const StructureReport& r) {
  json comps = json::array();
  for (const auto& c : r.components) {
    comps.push_back({{"variable", c.variable},
                     {"value", c.value.to_string()},
                     {"restricted_form", c.restricted_form.to_string()},
                     {"restricted_closed", to_string(closed_from(c.restricted_closed))}});
  }
  return comps;
}

void run_d(Sink& sink, const Document& doc, const RunOptions& opts) {
  for (const auto& [name, f] : select_forms(doc, opts, any_form, "a form")) {
    const DifferentialForm df = exterior_derivative(f);
    sink.line("d(" + name + ") = " + df.to_string());
    json j = header("d", name);
    j["degree"] = f.degree() + 1 > f.dimension() ? f.dimension() : f.degree() + 1;
    j["result"] = df.to_string();
    sink.record(j);
  }
}

void run_star(Sink& sink, const Document& doc, const RunOptions& opts) {
  const Metric g = doc.metric();
  for (const auto& [name, f] : select_forms(doc, opts, any_form, "a form")) {
    const DifferentialForm s = hodge_star(f, g);
    sink.line("*" + name + " = " + s.to_string());
    json j = header("star", name);
    j["degree"] = s.degree();
    j["result"] = s.to_string();
    sink.record(j);
  }
}

void run_wedge(Sink& sink, const Document& doc, const RunOptions& opts) {
  if (opts.names.size() != 2) throw InvalidArgument("wedge needs exactly two names");
  const auto a = select_forms(doc, opts, any_form, "a form");
  const DifferentialForm w = wedge(a[0].form, a[1].form);
  sink.line(a[0].name + " ^ " + a[1].name + " = " + w.to_string());
  json j = header("wedge", a[0].name);
  j["other"] = a[1].name;
  j["degree"] = w.degree();
  j["result"] = w.to_string();
  sink.record(j);
}

void run_classify(Sink& sink, const Document& doc, const RunOptions& opts) {
  for (const auto& [name, f] : select_forms(doc, opts, any_form, "a form")) {
    const ClosureVerdict v = classify_closure(f);
    if (v.closed == Truth::Unknown || v.exact == Truth::Unknown) sink.unknown();
    std::string text = name + ": ";
    if (v.closed == Truth::True) {
      text += "closed, ";
      if (v.exact == Truth::True) {
        text += v.potential ? "exact, potential = " + v.potential->to_string() : "exact (no closed-form potential)";
      } else if (v.exact == Truth::False) {
        text += "not exact";
      } else {
        text += "exactness unknown";
      }
    } else {
      text += v.closed == Truth::False ? "not closed" : "closedness unknown";
      text += "; d(" + name + ") = " + v.differential.to_string();
    }
    sink.line(text);
    json j = header("classify", name);
    j["closed"] = to_string(v.closed);
    j["exact"] = to_string(v.exact);
    j["potential"] = v.potential ? json(v.potential->to_string()) : json(nullptr);
    j["differential"] = v.differential.to_string();
    j["notes"] = v.notes;
    sink.record(j);
  }
}

void run_relation(Sink& sink, const Document& doc, const RunOptions& opts) {
  for (const RelationDecl* decl : select_decls<RelationDecl>(doc, opts, "a relation")) {
    const Relation r = classify_relation(decl->phi, decl->eta);
    if (r.verdict == RelationVerdict::Unknown) sink.unknown();
    std::string text = decl->name + ": " + upper(to_string(r.verdict));
    if (r.verdict != RelationVerdict::Identical) {
      if (r.eta_commutator) {
        text += "; " + commutator_text(*r.eta_commutator);
        if (r.eta_commutator->is_zero() != ZeroVerdict::Nonzero && !r.residual.empty()) {
          text += "; residual = " + r.residual.to_string();
        }
      } else {
        text += "; d(eta) = " + r.eta_differential.to_string() + "; residual = " + r.residual.to_string();
      }
    }
    sink.line(text);
    json j = header("relation", decl->name);
    j["verdict"] = to_string(r.verdict);
    j["phi"] = r.phi.to_string();
    j["eta"] = r.eta.to_string();
    j["residual"] = r.residual.to_string();
    j["eta_differential"] = r.eta_differential.to_string();
    j["commutator"] = r.eta_commutator ? commutator_json(*r.eta_commutator) : json(nullptr);
    sink.record(j);
  }
}

void run_frobenius(Sink& sink, const Document& doc, const RunOptions& opts) {
  for (const auto& [name, f] : select_forms(doc, opts, one_form, "a 1-form")) {
    const FrobeniusResult r = frobenius_test(f.empty() ? DifferentialForm(f.vars(), 1) : f);
    if (r.verdict == Integrability::Unknown) sink.unknown();
    std::string text = name + ": ";
    switch (r.verdict) {
      case Integrability::Integrable: text += "integrable"; break;
      case Integrability::Nonintegrable: text += "nonintegrable"; break;
      case Integrability::Unknown: text += "integrability unknown"; break;
    }
    if (r.verdict != Integrability::Integrable) text += "; " + name + "^d" + name + " = " + r.obstruction.to_string();
    sink.line(text);
    json j = header("frobenius", name);
    j["verdict"] = to_string(r.verdict);
    j["obstruction"] = r.obstruction.to_string();
    sink.record(j);
  }
}

void run_characteristics(Sink& sink, const Document& doc, const RunOptions& opts) {
  if (!opts.start) throw InvalidArgument("characteristics needs --start");
  if (opts.stride < 1) throw InvalidArgument("stride must be positive");
  auto scalar = [](const DifferentialForm& f) { return f.degree() == 0; };
  for (const auto& [name, f] : select_forms(doc, opts, scalar, "a scalar")) {
    const auto& start = *opts.start;
    const CharacteristicCurve c = characteristic_curves(f.coefficient({}), doc.vars, start, opts.steps, opts.h);
    const int done = static_cast<int>(c.points.size()) - 1;
    sink.line(name + ": level curve from (" + num(start[0]) + ", " + num(start[1]) + "), " + std::to_string(done) +
              " steps of h = " + num(opts.h) + ", max drift = " + small(c.max_drift));
    if (c.aborted) sink.line("  aborted: " + c.reason);
    json points = json::array();
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      const bool last = i + 1 == c.points.size();
      if (i % static_cast<std::size_t>(opts.stride) != 0 && !last) continue;
      sink.line("  step " + std::to_string(i) + ": (" + num(c.points[i][0], "%.9g") + ", " +
                num(c.points[i][1], "%.9g") + ")");
      points.push_back({{"step", i}, {"x", c.points[i][0]}, {"y", c.points[i][1]}});
    }
    json j = header("characteristics", name);
    j["start"] = {start[0], start[1]};
    j["h"] = opts.h;
    j["steps"] = done;
    j["aborted"] = c.aborted;
    j["reason"] = c.reason;
    j["max_drift"] = c.max_drift;
    j["points"] = points;
    sink.record(j);
  }
}

void run_pseudostructure(Sink& sink, const Document& doc, const RunOptions& opts) {
  const Metric g = doc.metric();
  for (const auto& [name, f] : select_forms(doc, opts, one_form, "a 1-form")) {
    const DifferentialForm a = f.empty() ? DifferentialForm(f.vars(), 1) : f;
    const StructureReport r = find_pseudostructure(a, g, scan_options(opts, doc.vars.dimension()));
    switch (r.status) {
      case StructureStatus::WholeDomain: sink.line(name + ": closed on the whole box, intensity 0"); break;
      case StructureStatus::Realized: sink.line(name + ": pseudostructure realized"); break;
      case StructureStatus::None: sink.line(name + ": no structure realized"); break;
    }
    if (r.status != StructureStatus::WholeDomain) {
      sink.line("  " + commutator_text(r.commutator));
      locus_lines(sink, r, "  ");
    }
    sink.line("  d(*" + name + ") coefficient: " + r.dual_condition_residual.to_string());
    json j = header("pseudostructure", name);
    j["status"] = to_string(r.status);
    j["commutator"] = commutator_json(r.commutator);
    j["locus"] = locus_json(r);
    j["points"] = r.points.size();
    j["intensity"] = r.intensity;
    j["restricted_form"] = r.restricted_form ? json(r.restricted_form->to_string()) : json(nullptr);
    j["dual_condition_residual"] = r.dual_condition_residual.to_string();
    sink.record(j);
  }
}

void run_stokes(Sink& sink, const Document& doc, const RunOptions& opts) {
  for (const auto& [name, f] : select_forms(doc, opts, one_form, "a 1-form")) {
    const StokesResult r = stokes_check(f.empty() ? DifferentialForm(f.vars(), 1) : f, opts.rect);
    sink.line(name + ": boundary = " + num(r.boundary) + ", area = " + num(r.area) +
              ", |difference| = " + small(r.difference));
    json j = header("stokes", name);
    j["rect"] = {opts.rect.x0, opts.rect.x1, opts.rect.y0, opts.rect.y1};
    j["boundary"] = r.boundary;
    j["area"] = r.area;
    j["difference"] = r.difference;
    sink.record(j);
  }
}

void run_balance(Sink& sink, const Document& doc, const RunOptions& opts) {
  for (const BalanceDecl* decl : select_decls<BalanceDecl>(doc, opts, "a balance system")) {
    const EvolutionaryRelation rel = build_relation({doc.vars, decl->actions, decl->psi});
    if (rel.verdict == RelationVerdict::Unknown) sink.unknown();
    const EquilibriumReport eq = equilibrium_scan(rel, scan_options(opts, doc.vars.dimension()));
    const std::string& name = decl->name;
    sink.line(name + ": omega = " + rel.omega.to_string());
    sink.line("  relation: " + upper(to_string(rel.verdict)));
    if (rel.psi) sink.line(std::string("  psi") + (rel.psi_reconstructed ? " (reconstructed)" : "") + " = " + rel.psi->to_string());
    sink.line("  " + commutator_text(rel.commutator));
    sink.line("  state: " + eq.state);
    if (eq.structure.status != StructureStatus::WholeDomain) locus_lines(sink, eq.structure, "  ");
    if (eq.psi_restricted) {
      sink.line(std::string("  d(psi) = omega on locus: ") + std::string(to_string(closed_from(*eq.psi_restricted))));
    }
    json j = header("balance-scan", name);
    j["omega"] = rel.omega.to_string();
    j["verdict"] = to_string(rel.verdict);
    j["psi"] = rel.psi ? json(rel.psi->to_string()) : json(nullptr);
    j["psi_reconstructed"] = rel.psi_reconstructed;
    j["commutator"] = commutator_json(rel.commutator);
    j["state"] = eq.state;
    j["status"] = to_string(eq.structure.status);
    j["locus"] = locus_json(eq.structure);
    j["points"] = eq.structure.points.size();
    j["intensity"] = eq.structure.intensity;
    j["psi_on_locus"] = eq.psi_restricted ? json(to_string(closed_from(*eq.psi_restricted))) : json(nullptr);
    j["notes"] = rel.notes;
    sink.record(j);
  }
}

void run_table(Sink& sink, const RunOptions& opts) {
  for (const TableRow& row : classification_table(opts.table_p, opts.table_n)) {
    sink.line("k=" + std::to_string(row.k) + " dim=" + std::to_string(row.dimension) +
              (row.exceeds_space ? " (exceeds n)" : ""));
    sink.record({{"command", "table"},
                 {"p", opts.table_p},
                 {"n", opts.table_n},
                 {"k", row.k},
                 {"dimension", row.dimension},
                 {"exceeds_space", row.exceeds_space}});
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"d",       "wedge",           "star",   "classify",
                                                 "relation", "frobenius",      "characteristics",
                                                 "pseudostructure", "stokes",  "balance-scan", "table"};
  return names;
}

RunResult run_command(const Document* doc, const RunOptions& opts) {
  Sink sink(opts.format);
  if (opts.command == "table") {
    run_table(sink, opts);
    return sink.finish();
  }
  if (!doc) throw InvalidArgument("command " + opts.command + " needs a document");
  if (!(opts.tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (opts.grid < 3) throw InvalidArgument("grid needs at least 3 points per axis");
  if (!(opts.h > 0.0)) throw InvalidArgument("step size must be positive");

  const std::string& c = opts.command;
  if (c == "d") {
    run_d(sink, *doc, opts);
  } else if (c == "wedge") {
    run_wedge(sink, *doc, opts);
  } else if (c == "star") {
    run_star(sink, *doc, opts);
  } else if (c == "classify") {
    run_classify(sink, *doc, opts);
  } else if (c == "relation") {
    run_relation(sink, *doc, opts);
  } else if (c == "frobenius") {
    run_frobenius(sink, *doc, opts);
  } else if (c == "characteristics") {
    run_characteristics(sink, *doc, opts);
  } else if (c == "pseudostructure") {
    run_pseudostructure(sink, *doc, opts);
  } else if (c == "stokes") {
    run_stokes(sink, *doc, opts);
  } else if (c == "balance-scan") {
    run_balance(sink, *doc, opts);
  } else {
    throw InvalidArgument("unknown command " + c);
  }
  return sink.finish();
}

}  // namespace skewforms
