#include "entangle/entangle.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "chain3d.hpp"
#include "errors.hpp"
#include "finiteform.hpp"
#include "io.hpp"
#include "laurent.hpp"
#include "montecarlo.hpp"

struct ent_chain_t {
  entangle::PolyChain chain;
};

struct ent_chain_list_t {
  std::vector<ent_chain_t> chains;
};

struct ent_poly_t {
  entangle::LaurentPoly poly;
  char variable = 'A';
};

struct ent_estimate_t {
  entangle::BracketEstimate est;
  ent_poly_t mean;
};

struct ent_distribution_t {
  entangle::DistributionEstimate est;
  std::vector<std::pair<std::pair<std::string, int>, entangle::DistributionEntry>> rows;
};

namespace {

thread_local std::string last_error;

ent_status fail(ent_status s, const char* msg) {
  last_error = msg;
  return s;
}

template <class F>
ent_status guard(F f) {
  try {
    f();
    last_error.clear();
    return ENT_OK;
  } catch (const entangle::ParseError& e) {
    return fail(ENT_ERR_PARSE, e.what());
  } catch (const entangle::DegenerateGeometry& e) {
    return fail(ENT_ERR_DEGENERATE, e.what());
  } catch (const entangle::CapacityError& e) {
    return fail(ENT_ERR_CAPACITY, e.what());
  } catch (const entangle::ConditioningError& e) {
    return fail(ENT_ERR_CONDITIONING, e.what());
  } catch (const entangle::DomainError& e) {
    return fail(ENT_ERR_DOMAIN, e.what());
  } catch (const entangle::InvalidArgument& e) {
    return fail(ENT_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(ENT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ENT_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) throw entangle::InvalidArgument(std::string(what) + " is null");
}

entangle::McOptions options(const ent_mc_options* opt) {
  entangle::McOptions o;
  if (opt) {
    o.samples = opt->samples;
    o.seed = opt->seed;
    o.threads = opt->threads;
  }
  return o;
}

}  // namespace

extern "C" {

const char* ent_last_error(void) { return last_error.c_str(); }

const char* ent_status_name(ent_status status) {
  switch (status) {
    case ENT_OK: return "ok";
    case ENT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ENT_ERR_PARSE: return "parse error";
    case ENT_ERR_DEGENERATE: return "degenerate geometry";
    case ENT_ERR_CAPACITY: return "capacity exceeded";
    case ENT_ERR_CONDITIONING: return "ill-conditioned input";
    case ENT_ERR_DOMAIN: return "domain error";
    case ENT_ERR_INTERNAL: return "internal error";
    case ENT_ERR_UNSUPPORTED: return "unsupported";
  }
  return "unknown";
}

void ent_string_free(char* s) { std::free(s); }

ent_status ent_chain_create(const double* xyz, size_t n_vertices, int closed, ent_chain_t** out) {
  return guard([&] {
    need(out, "out");
    need(xyz, "xyz");
    std::vector<entangle::Point3> v(n_vertices);
    for (size_t i = 0; i < n_vertices; ++i) v[i] = {xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2]};
    *out = new ent_chain_t{entangle::make_chain(std::move(v), closed != 0)};
  });
}

ent_chain_t* ent_chain_clone(const ent_chain_t* c) { return c ? new ent_chain_t(*c) : nullptr; }
void ent_chain_free(ent_chain_t* c) { delete c; }
size_t ent_chain_vertex_count(const ent_chain_t* c) { return c ? c->chain.vertices.size() : 0; }
size_t ent_chain_edge_count(const ent_chain_t* c) { return c ? c->chain.edge_count() : 0; }
int ent_chain_is_closed(const ent_chain_t* c) { return c && c->chain.closed ? 1 : 0; }

ent_status ent_chain_vertex(const ent_chain_t* c, size_t i, double xyz[3]) {
  return guard([&] {
    need(c, "chain");
    if (i >= c->chain.vertices.size()) throw entangle::InvalidArgument("vertex index out of range");
    const auto p = c->chain.vertices[i];
    xyz[0] = p.x;
    xyz[1] = p.y;
    xyz[2] = p.z;
  });
}

namespace {

ent_chain_list_t* make_list(std::vector<entangle::PolyChain> chains) {
  auto* l = new ent_chain_list_t;
  for (auto& c : chains) l->chains.push_back({std::move(c)});
  return l;
}

}  // namespace

ent_status ent_chain_list_load(const char* path, ent_chain_list_t** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = make_list(entangle::parse_chain_file(path));
  });
}

ent_status ent_chain_list_parse(const char* content, ent_chain_list_t** out) {
  return guard([&] {
    need(content, "content");
    need(out, "out");
    *out = make_list(entangle::parse_chains(content));
  });
}

size_t ent_chain_list_size(const ent_chain_list_t* l) { return l ? l->chains.size() : 0; }

const ent_chain_t* ent_chain_list_get(const ent_chain_list_t* l, size_t i) {
  return l && i < l->chains.size() ? &l->chains[i] : nullptr;
}

void ent_chain_list_free(ent_chain_list_t* l) { delete l; }

ent_status ent_gauss_linking(const ent_chain_t* a, const ent_chain_t* b, double* out) {
  return guard([&] {
    need(a, "chain a");
    need(b, "chain b");
    need(out, "out");
    *out = entangle::gauss_linking(a->chain, b->chain);
  });
}

ent_status ent_writhe(const ent_chain_t* c, double* out) {
  return guard([&] {
    need(c, "chain");
    need(out, "out");
    *out = entangle::writhe(c->chain);
  });
}

ent_status ent_acn(const ent_chain_t* c, double* out) {
  return guard([&] {
    need(c, "chain");
    need(out, "out");
    *out = entangle::acn(c->chain);
  });
}

ent_status ent_bracket_exact(const ent_chain_t* c, ent_poly_t** out) {
  bool unsupported = false;
  const ent_status s = guard([&] {
    need(c, "chain");
    need(out, "out");
    auto p = entangle::exact_bracket(c->chain);
    if (!p) {
      unsupported = true;
      return;
    }
    *out = new ent_poly_t{std::move(*p), 'A'};
  });
  if (s == ENT_OK && unsupported) return fail(ENT_ERR_UNSUPPORTED, "no finite form for this chain");
  return s;
}

ent_status ent_jones_exact(const ent_chain_t* c, ent_poly_t** out) {
  bool unsupported = false;
  const ent_status s = guard([&] {
    need(c, "chain");
    need(out, "out");
    auto p = entangle::exact_jones(c->chain);
    if (!p) {
      unsupported = true;
      return;
    }
    *out = new ent_poly_t{std::move(*p), 't'};
  });
  if (s == ENT_OK && unsupported) return fail(ENT_ERR_UNSUPPORTED, "no finite form for this chain");
  return s;
}

ent_status ent_p_k21(const ent_chain_t* c, double* probability, int* which_case, int* writhe_sign) {
  return guard([&] {
    need(c, "chain");
    const auto k = entangle::p_k21(c->chain);
    if (probability) *probability = k.probability;
    if (which_case)
      *which_case = k.which == entangle::K21Case::bi ? ENT_K21_BI : k.which == entangle::K21Case::bii ? ENT_K21_BII
                                                                                                       : ENT_K21_NONE;
    if (writhe_sign) *writhe_sign = k.writhe_sign;
  });
}

namespace {

ent_estimate_t* wrap(entangle::BracketEstimate e) {
  auto* out = new ent_estimate_t;
  out->mean = {e.mean, e.variable};
  out->est = std::move(e);
  return out;
}

}  // namespace

ent_status ent_mc_bracket(const ent_chain_t* c, const ent_mc_options* opt, ent_estimate_t** out) {
  return guard([&] {
    need(c, "chain");
    need(out, "out");
    *out = wrap(entangle::mc_bracket(c->chain, options(opt)));
  });
}

ent_status ent_mc_jones(const ent_chain_t* c, const ent_mc_options* opt, ent_estimate_t** out) {
  return guard([&] {
    need(c, "chain");
    need(out, "out");
    *out = wrap(entangle::to_variable_t(entangle::mc_jones(c->chain, options(opt))));
  });
}

const ent_poly_t* ent_estimate_mean(const ent_estimate_t* e) { return e ? &e->mean : nullptr; }

double ent_estimate_stderr(const ent_estimate_t* e, int quarter_exp) {
  if (!e) return 0.0;
  auto it = e->est.stderr_by_exp.find(quarter_exp);
  return it == e->est.stderr_by_exp.end() ? 0.0 : it->second;
}

uint64_t ent_estimate_samples(const ent_estimate_t* e) { return e ? e->est.samples : 0; }
uint64_t ent_estimate_rejected(const ent_estimate_t* e) { return e ? e->est.rejected : 0; }

ent_status ent_estimate_to_json(const ent_estimate_t* e, char** out) {
  return guard([&] {
    need(e, "estimate");
    need(out, "out");
    *out = dup_string(entangle::to_json(e->est).dump());
  });
}

void ent_estimate_free(ent_estimate_t* e) { delete e; }

ent_status ent_mc_distribution(const ent_chain_t* c, const ent_mc_options* opt, ent_distribution_t** out) {
  return guard([&] {
    need(c, "chain");
    need(out, "out");
    auto* d = new ent_distribution_t;
    try {
      d->est = entangle::mc_distribution(c->chain, options(opt));
    } catch (...) {
      delete d;
      throw;
    }
    for (const auto& row : d->est.entries) d->rows.push_back(row);
    *out = d;
  });
}

size_t ent_distribution_size(const ent_distribution_t* d) { return d ? d->rows.size() : 0; }

ent_status ent_distribution_entry(const ent_distribution_t* d, size_t i, const char** class_name, int* writhe,
                                  double* probability, double* stderr_value) {
  return guard([&] {
    need(d, "distribution");
    if (i >= d->rows.size()) throw entangle::InvalidArgument("entry index out of range");
    const auto& row = d->rows[i];
    if (class_name) *class_name = row.first.first.c_str();
    if (writhe) *writhe = row.first.second;
    if (probability) *probability = row.second.probability;
    if (stderr_value) *stderr_value = row.second.stderr_;
  });
}

uint64_t ent_distribution_rejected(const ent_distribution_t* d) { return d ? d->est.rejected : 0; }

ent_status ent_distribution_to_json(const ent_distribution_t* d, char** out) {
  return guard([&] {
    need(d, "distribution");
    need(out, "out");
    *out = dup_string(entangle::to_json(d->est).dump());
  });
}

void ent_distribution_free(ent_distribution_t* d) { delete d; }

ent_status ent_poly_from_json(const char* json, char variable, ent_poly_t** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    if (variable != 'A' && variable != 't') throw entangle::InvalidArgument("variable must be 'A' or 't'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
      throw entangle::ParseError("invalid JSON", 1, static_cast<int>(e.byte));
    }
    *out = new ent_poly_t{entangle::poly_from_json(j), variable};
  });
}

ent_poly_t* ent_poly_clone(const ent_poly_t* p) { return p ? new ent_poly_t(*p) : nullptr; }
char ent_poly_variable(const ent_poly_t* p) { return p ? p->variable : 'A'; }
size_t ent_poly_term_count(const ent_poly_t* p) { return p ? p->poly.terms().size() : 0; }

ent_status ent_poly_term(const ent_poly_t* p, size_t i, int* quarter_exp, double* coeff) {
  return guard([&] {
    need(p, "polynomial");
    const auto& t = p->poly.terms();
    if (i >= t.size()) throw entangle::InvalidArgument("term index out of range");
    auto it = t.rbegin();
    std::advance(it, static_cast<std::ptrdiff_t>(i));
    if (quarter_exp) *quarter_exp = it->first;
    if (coeff) *coeff = it->second;
  });
}

ent_status ent_poly_eval(const ent_poly_t* p, double x, double* out) {
  return guard([&] {
    need(p, "polynomial");
    need(out, "out");
    *out = entangle::eval(p->poly, x);
  });
}

double ent_poly_distance(const ent_poly_t* a, const ent_poly_t* b) {
  if (!a || !b) return 0.0;
  return entangle::distance(a->poly, b->poly);
}

ent_status ent_poly_to_t(const ent_poly_t* p, ent_poly_t** out) {
  return guard([&] {
    need(p, "polynomial");
    need(out, "out");
    if (p->variable == 't')
      *out = new ent_poly_t(*p);
    else
      *out = new ent_poly_t{entangle::substitute_t(p->poly), 't'};
  });
}

ent_status ent_poly_to_string(const ent_poly_t* p, char** out) {
  return guard([&] {
    need(p, "polynomial");
    need(out, "out");
    *out = dup_string(entangle::render(p->poly, p->variable));
  });
}

ent_status ent_poly_to_json(const ent_poly_t* p, char** out) {
  return guard([&] {
    need(p, "polynomial");
    need(out, "out");
    *out = dup_string(entangle::to_json(p->poly).dump());
  });
}

void ent_poly_free(ent_poly_t* p) { delete p; }

}  // extern "C"
