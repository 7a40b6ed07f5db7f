// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "skewforms/skewforms.h"

namespace {

struct Settings {
  std::string file;
  std::vector<std::string> names;
  std::string format = "text";
  bool strict = false;
  double tol = 1e-6;
  std::string box;
  int grid = 101;
  double h = 1e-3;
  int steps = 10000;
  std::string start;
  std::string rect = "0:1,0:1";
  int stride = 1000;
  int table_p = 0;
  int table_n = 0;
};

// "a:b,c:d" -> {a, b, c, d}
std::vector<double> parse_ranges(const std::string& text, const std::string& option) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError(option, "expected lo:hi ranges separated by commas");
    try {
      std::size_t used = 0;
      const std::string lo = item.substr(0, colon);
      const std::string hi = item.substr(colon + 1);
      out.push_back(std::stod(lo, &used));
      if (used != lo.size()) throw std::invalid_argument(lo);
      out.push_back(std::stod(hi, &used));
      if (used != hi.size()) throw std::invalid_argument(hi);
    } catch (const std::logic_error&) {
      throw CLI::ValidationError(option, "bad number in '" + item + "'");
    }
  }
  return out;
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("--start", "bad number in '" + item + "'");
    }
  }
  if (out.size() != 2) throw CLI::ValidationError("--start", "expected x,y");
  return out;
}

void add_numeric_options(CLI::App* sub, Settings& s) {
  sub->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"text", "jsonl"}));
  sub->add_flag("--strict", s.strict, "Exit with status 1 when a verdict is unknown");
  sub->add_option("--tol", s.tol, "Zero tolerance for grid scans")->check(CLI::PositiveNumber);
  sub->add_option("--box", s.box, "Scan box as lo:hi per coordinate, e.g. -1:1,-1:1");
  sub->add_option("--grid", s.grid, "Grid points per axis")->check(CLI::Range(3, 100000));
  sub->add_option("--step", s.h, "RK4 step size h")->check(CLI::PositiveNumber);
  sub->add_option("--steps", s.steps, "RK4 step count")->check(CLI::NonNegativeNumber);
  sub->add_option("--start", s.start, "Start point x,y for characteristics");
  sub->add_option("--rect", s.rect, "Stokes rectangle x0:x1,y0:y1");
  sub->add_option("--stride", s.stride, "Print every n-th curve point")->check(CLI::PositiveNumber);
}

int report_error(const std::string& where) {
  std::cerr << "skewforms: ";
  if (!where.empty()) std::cerr << where << ": ";
  std::cerr << sf_last_error() << '\n';
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exterior differential forms: derivatives, duals, closure and relation analysis", "skewforms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", sf_version());

  Settings s;
  struct Command {
    const char* name;
    const char* help;
    const char* names_help;
  };
  const std::vector<Command> commands = {
      {"d", "Exterior derivative", "Forms or scalars (default: all)"},
      {"wedge", "Wedge product of two forms", "The two forms"},
      {"star", "Hodge dual under the document metric", "Forms or scalars (default: all)"},
      {"classify", "Closed / exact classification with potential", "Forms or scalars (default: all)"},
      {"relation", "Identical versus nonidentical relations", "Relations (default: all)"},
      {"frobenius", "Integrability test w ^ dw = 0 (n >= 3)", "1-forms (default: all)"},
      {"characteristics", "Level curves of a scalar by RK4", "Scalars (default: all)"},
      {"pseudostructure", "Zero locus of the commutator of a 1-form", "1-forms (default: all)"},
      {"stokes", "Boundary versus area integral on a rectangle", "1-forms (default: all)"},
      {"balance-scan", "Balance-law relation and equilibrium locus scan", "Balance systems (default: all)"},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("file", s.file, "Input .forms file")->required();
    auto* names = sub->add_option("names", s.names, c.names_help);
    if (std::string(c.name) == "wedge") names->expected(2)->required();
    add_numeric_options(sub, s);
  }
  CLI::App* table = app.add_subcommand("table", "Pseudostructure dimensions n+1-k for k = p..0");
  table->add_option("p", s.table_p, "Form degree (0..3)")->required();
  table->add_option("n", s.table_n, "Space dimension (>= 1)")->required();
  table->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"text", "jsonl"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();

  sf_run_options opts;
  sf_run_options_init(&opts);
  opts.format = s.format == "jsonl" ? SF_FORMAT_JSONL : SF_FORMAT_TEXT;
  opts.grid = s.grid;
  opts.h = s.h;
  opts.steps = s.steps;
  opts.tol = s.tol;
  opts.stride = s.stride;
  opts.table_p = s.table_p;
  opts.table_n = s.table_n;

  std::vector<double> box;
  std::vector<const char*> names;
  try {
    if (!s.box.empty()) box = parse_ranges(s.box, "--box");
    const std::vector<double> rect = parse_ranges(s.rect, "--rect");
    if (rect.size() != 4) throw CLI::ValidationError("--rect", "expected x0:x1,y0:y1");
    for (int i = 0; i < 4; ++i) opts.rect[i] = rect[static_cast<std::size_t>(i)];
    if (!s.start.empty()) {
      const auto p = parse_point(s.start);
      opts.has_start = 1;
      opts.start[0] = p[0];
      opts.start[1] = p[1];
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "skewforms: " << e.what() << '\n';
    return 2;
  }
  opts.box = box.empty() ? nullptr : box.data();
  opts.box_dims = box.size() / 2;
  for (const auto& n : s.names) names.push_back(n.c_str());
  opts.names = names.data();
  opts.name_count = names.size();

  std::unique_ptr<sf_document, decltype(&sf_document_free)> doc(nullptr, sf_document_free);
  if (command != "table") {
    sf_document* raw = nullptr;
    if (sf_document_load(s.file.c_str(), &raw) != SF_OK) return report_error(s.file);
    doc.reset(raw);
  }

  sf_report* raw_report = nullptr;
  if (sf_run(doc.get(), command.c_str(), &opts, &raw_report) != SF_OK) return report_error(s.file);
  std::unique_ptr<sf_report, decltype(&sf_report_free)> report(raw_report, sf_report_free);
  std::fputs(sf_report_text(report.get()), stdout);
  std::fflush(stdout);
  return s.strict && sf_report_has_unknown(report.get()) ? 1 : 0;
}
