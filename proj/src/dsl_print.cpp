#include "skewforms/dsl.hpp"

namespace skewforms {

namespace {

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string print(const Document& doc) {
  std::string out = "vars ";
  for (std::size_t i = 0; i < doc.vars.size(); ++i) {
    if (i > 0) out += ", ";
    out += doc.vars.names()[i];
  }
  out += '\n';
  if (doc.signature) {
    out += "metric (";
    for (std::size_t i = 0; i < doc.signature->size(); ++i) {
      if (i > 0) out += ", ";
      out += (*doc.signature)[i] < 0 ? "-1" : "1";
    }
    out += ")\n";
  }
  for (const auto& decl : doc.declarations) {
    std::visit(Overloaded{
                   [&](const FormDecl& f) { out += "form " + f.name + " = " + f.form.to_string(); },
                   [&](const ScalarDecl& s) { out += "scalar " + s.name + " = " + s.value.to_string(); },
                   [&](const RelationDecl& r) {
                     out += "relation " + r.name + ": d(" + r.phi.to_string() + ") = " + r.eta.to_string();
                   },
                   [&](const BalanceDecl& b) {
                     out += "balance " + b.name + ": A = (";
                     for (std::size_t i = 0; i < b.actions.size(); ++i) {
                       if (i > 0) out += ", ";
                       out += b.actions[i].to_string();
                     }
                     out += ')';
                     if (b.psi) out += ", psi = " + b.psi->to_string();
                   },
               },
               decl);
    out += '\n';
  }
  return out;
}

}  // namespace skewforms
