#include "skewforms/skewforms.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>

#include "skewforms/dsl.hpp"
#include "skewforms/errors.hpp"
#include "skewforms/report.hpp"

struct sf_document {
  skewforms::Document doc;
};

struct sf_form {
  skewforms::DifferentialForm form;
};

struct sf_report {
  skewforms::RunResult result;
};

namespace {

thread_local std::string g_error;
thread_local int g_line = 0;
thread_local int g_column = 0;

sf_status fail(sf_status status, const std::string& message, int line = 0, int column = 0) {
  g_error = message;
  g_line = line;
  g_column = column;
  return status;
}

// Runs f, mapping library exceptions onto status codes.
template <typename F>
sf_status guarded(F&& f) {
  try {
    f();
    return SF_OK;
  } catch (const skewforms::ParseError& e) {
    return fail(SF_ERR_PARSE, e.what(), e.line(), e.column());
  } catch (const skewforms::NameNotFound& e) {
    return fail(SF_ERR_NOT_FOUND, e.what());
  } catch (const skewforms::DomainError& e) {
    return fail(SF_ERR_DOMAIN, e.what());
  } catch (const skewforms::Error& e) {
    return fail(SF_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SF_ERR_INTERNAL, "unknown failure");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* sf_version(void) { return "0.1.0"; }

const char* sf_last_error(void) { return g_error.c_str(); }
int sf_last_error_line(void) { return g_line; }
int sf_last_error_column(void) { return g_column; }

void sf_string_free(char* s) { std::free(s); }

sf_status sf_document_parse(const char* text, size_t length, sf_document** out) {
  if (!text || !out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new sf_document{skewforms::parse(std::string_view(text, length))}; });
}

sf_status sf_document_load(const char* path, sf_document** out) {
  if (!path || !out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  std::ifstream in(path, std::ios::binary);
  if (!in) return fail(SF_ERR_IO, std::string("cannot open ") + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return fail(SF_ERR_IO, std::string("cannot read ") + path);
  const std::string text = buf.str();
  return sf_document_parse(text.data(), text.size(), out);
}

void sf_document_free(sf_document* doc) { delete doc; }

sf_status sf_document_print(const sf_document* doc, char** out) {
  if (!doc || !out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = copy_string(skewforms::print(doc->doc)); });
}

size_t sf_document_size(const sf_document* doc) { return doc ? doc->doc.declarations.size() : 0; }

const char* sf_document_name(const sf_document* doc, size_t index) {
  if (!doc || index >= doc->doc.declarations.size()) return nullptr;
  return skewforms::declaration_name(doc->doc.declarations[index]).c_str();
}

sf_status sf_document_get_form(const sf_document* doc, const char* name, sf_form** out) {
  if (!doc || !name || !out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const skewforms::Declaration* d = doc->doc.find(name);
    if (!d) throw skewforms::NameNotFound(name);
    if (const auto* f = std::get_if<skewforms::FormDecl>(d)) {
      *out = new sf_form{f->form};
    } else if (const auto* s = std::get_if<skewforms::ScalarDecl>(d)) {
      *out = new sf_form{skewforms::DifferentialForm::scalar(doc->doc.vars, s->value)};
    } else {
      throw skewforms::InvalidArgument(std::string(name) + " is not a form or scalar");
    }
  });
}

void sf_form_free(sf_form* form) { delete form; }

int sf_form_degree(const sf_form* form) { return form ? form->form.degree() : -1; }

sf_status sf_form_to_string(const sf_form* form, char** out) {
  if (!form || !out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = copy_string(form->form.to_string()); });
}

sf_status sf_form_exterior_derivative(const sf_form* form, sf_form** out) {
  if (!form || !out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new sf_form{skewforms::exterior_derivative(form->form)}; });
}

sf_status sf_form_wedge(const sf_form* a, const sf_form* b, sf_form** out) {
  if (!a || !b || !out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new sf_form{skewforms::wedge(a->form, b->form)}; });
}

sf_status sf_form_hodge_star(const sf_document* doc, const sf_form* form, sf_form** out) {
  if (!doc || !form || !out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new sf_form{skewforms::hodge_star(form->form, doc->doc.metric())}; });
}

void sf_run_options_init(sf_run_options* options) {
  if (!options) return;
  *options = sf_run_options{};
  options->format = SF_FORMAT_TEXT;
  options->grid = 101;
  options->h = 1e-3;
  options->steps = 10000;
  options->tol = 1e-6;
  options->rect[1] = 1.0;
  options->rect[3] = 1.0;
  options->stride = 1000;
}

sf_status sf_run(const sf_document* doc, const char* command, const sf_run_options* options, sf_report** out) {
  if (!command || !options || !out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    skewforms::RunOptions o;
    o.command = command;
    for (size_t i = 0; i < options->name_count && options->names; ++i) o.names.emplace_back(options->names[i]);
    o.format = options->format == SF_FORMAT_JSONL ? skewforms::OutputFormat::JsonLines : skewforms::OutputFormat::Text;
    if (options->box_dims > 0 && options->box) {
      skewforms::Box box;
      for (size_t i = 0; i < options->box_dims; ++i) box.ranges.emplace_back(options->box[2 * i], options->box[2 * i + 1]);
      o.box = std::move(box);
    }
    o.grid = options->grid;
    o.h = options->h;
    o.steps = options->steps;
    o.tol = options->tol;
    if (options->has_start) o.start = std::array<double, 2>{options->start[0], options->start[1]};
    o.rect = {options->rect[0], options->rect[1], options->rect[2], options->rect[3]};
    o.stride = options->stride;
    o.table_p = options->table_p;
    o.table_n = options->table_n;
    *out = new sf_report{skewforms::run_command(doc ? &doc->doc : nullptr, o)};
  });
}

const char* sf_report_text(const sf_report* report) { return report ? report->result.output.c_str() : ""; }

int sf_report_has_unknown(const sf_report* report) { return report && report->result.has_unknown ? 1 : 0; }

void sf_report_free(sf_report* report) { delete report; }

}  // extern "C"
