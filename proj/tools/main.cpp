#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entangle/entangle.h"

namespace {

using nlohmann::json;

struct Failure {
  ent_status status;
  std::string message;
};

void check(ent_status s) {
  if (s != ENT_OK) throw Failure{s, ent_last_error()};
}

struct PolyDel {
  void operator()(ent_poly_t* p) const { ent_poly_free(p); }
};
struct EstDel {
  void operator()(ent_estimate_t* e) const { ent_estimate_free(e); }
};
struct ListDel {
  void operator()(ent_chain_list_t* l) const { ent_chain_list_free(l); }
};
struct DistDel {
  void operator()(ent_distribution_t* d) const { ent_distribution_free(d); }
};
using PolyPtr = std::unique_ptr<ent_poly_t, PolyDel>;
using EstPtr = std::unique_ptr<ent_estimate_t, EstDel>;
using ListPtr = std::unique_ptr<ent_chain_list_t, ListDel>;
using DistPtr = std::unique_ptr<ent_distribution_t, DistDel>;

std::string take(char* s) {
  std::string out(s);
  ent_string_free(s);
  return out;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string exponent_label(int q) {
  int g = 4;
  while (g > 1 && q % g != 0) g /= 2;
  return g == 4 ? std::to_string(q / 4) : std::to_string(q / g) + "/" + std::to_string(4 / g);
}

struct Config {
  std::vector<std::string> inputs;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::optional<bool> exact;
  std::string variable;
  std::string format = "text";
  std::string invariant = "jones";
  bool verify = false;
  std::vector<double> eval_at;
};

ListPtr load(const std::string& path) {
  ent_chain_list_t* l = nullptr;
  check(ent_chain_list_load(path.c_str(), &l));
  return ListPtr(l);
}

std::vector<const ent_chain_t*> all_chains(const std::vector<ListPtr>& lists) {
  std::vector<const ent_chain_t*> out;
  for (const auto& l : lists)
    for (size_t i = 0; i < ent_chain_list_size(l.get()); ++i) out.push_back(ent_chain_list_get(l.get(), i));
  return out;
}

ent_mc_options mc_opts(const Config& c) { return {c.samples, c.seed, c.threads}; }

std::map<int, double> terms(const ent_poly_t* p) {
  std::map<int, double> out;
  for (size_t i = 0; i < ent_poly_term_count(p); ++i) {
    int k = 0;
    double v = 0.0;
    check(ent_poly_term(p, i, &k, &v));
    out[k] = v;
  }
  return out;
}

// One evaluated polynomial invariant of a chain.
struct PolyResult {
  PolyPtr poly;
  EstPtr estimate;  // set for Monte-Carlo results
  bool exact = false;
  std::optional<bool> verified;
  double max_z = 0.0;
};

bool has_finite_form(const ent_chain_t* c) { return ent_chain_edge_count(c) <= 4; }

PolyResult compute_mc(const ent_chain_t* c, bool jones, const Config& cfg) {
  PolyResult r;
  ent_estimate_t* e = nullptr;
  const ent_mc_options o = mc_opts(cfg);
  check(jones ? ent_mc_jones(c, &o, &e) : ent_mc_bracket(c, &o, &e));
  r.estimate.reset(e);
  r.poly.reset(ent_poly_clone(ent_estimate_mean(e)));
  return r;
}

PolyResult compute(const ent_chain_t* c, bool jones, const Config& cfg) {
  bool use_exact = cfg.exact.value_or(has_finite_form(c));
  if (use_exact && !has_finite_form(c)) {
    std::cerr << "warning: no finite form for " << ent_chain_edge_count(c)
              << " edges; using Monte-Carlo sampling\n";
    use_exact = false;
  }
  if (!use_exact) return compute_mc(c, jones, cfg);

  PolyResult r;
  ent_poly_t* p = nullptr;
  check(jones ? ent_jones_exact(c, &p) : ent_bracket_exact(c, &p));
  r.poly.reset(p);
  r.exact = true;
  if (cfg.verify) {
    PolyResult mc = compute_mc(c, jones, cfg);
    const auto a = terms(r.poly.get());
    const auto b = terms(mc.poly.get());
    std::set<int> keys;
    for (const auto& [k, v] : a) keys.insert(k);
    for (const auto& [k, v] : b) keys.insert(k);
    bool ok = true;
    for (int k : keys) {
      const double diff = std::abs((a.count(k) ? a.at(k) : 0.0) - (b.count(k) ? b.at(k) : 0.0));
      const double se = ent_estimate_stderr(mc.estimate.get(), k);
      if (se > 0.0) {
        r.max_z = std::max(r.max_z, diff / se);
        if (diff > 3.0 * se) ok = false;
      } else if (diff > 1e-9) {
        ok = false;
        r.max_z = INFINITY;
      }
    }
    r.verified = ok;
  }
  return r;
}

PolyPtr in_variable(const ent_poly_t* p, char var) {
  if (ent_poly_variable(p) == var) return PolyPtr(ent_poly_clone(p));
  if (var == 'A') throw Failure{ENT_ERR_UNSUPPORTED, "a t-polynomial cannot be rewritten in A"};
  ent_poly_t* out = nullptr;
  check(ent_poly_to_t(p, &out));
  return PolyPtr(out);
}

double stderr_in(const PolyResult& r, int k, char var) {
  if (!r.estimate) return 0.0;
  const char from = ent_poly_variable(ent_estimate_mean(r.estimate.get()));
  if (from == var) return ent_estimate_stderr(r.estimate.get(), k);
  // A -> t maps quarter exponent e to -e/4.
  return ent_estimate_stderr(r.estimate.get(), -4 * k);
}

double rejected_rate(const PolyResult& r) {
  if (!r.estimate) return 0.0;
  const double s = static_cast<double>(ent_estimate_samples(r.estimate.get()));
  const double rej = static_cast<double>(ent_estimate_rejected(r.estimate.get()));
  return rej / (s + rej);
}

struct Row {
  std::map<int, double> coeffs;
  std::map<int, double> errs;
  std::vector<double> evals;
  std::string rendered;
  json poly_json;
  double writhe = 0.0;
  double acn = 0.0;
  std::optional<double> p_k21;
  double rejected_rate = 0.0;
  bool mc = false;
  std::optional<bool> verified;
  double max_z = 0.0;
  std::uint64_t samples = 0;
};

Row make_row(const ent_chain_t* c, bool jones, char var, const Config& cfg, bool geometry) {
  PolyResult r = compute(c, jones, cfg);
  PolyPtr p = in_variable(r.poly.get(), var);
  Row row;
  row.coeffs = terms(p.get());
  for (const auto& [k, v] : row.coeffs) row.errs[k] = stderr_in(r, k, var);
  for (double x : cfg.eval_at) {
    double v = 0.0;
    check(ent_poly_eval(p.get(), x, &v));
    row.evals.push_back(v);
  }
  char* s = nullptr;
  check(ent_poly_to_string(p.get(), &s));
  row.rendered = take(s);
  check(ent_poly_to_json(p.get(), &s));
  row.poly_json = json::parse(take(s));
  row.mc = static_cast<bool>(r.estimate);
  row.rejected_rate = rejected_rate(r);
  row.verified = r.verified;
  row.max_z = r.max_z;
  if (r.estimate) row.samples = ent_estimate_samples(r.estimate.get());
  if (geometry) {
    check(ent_writhe(c, &row.writhe));
    check(ent_acn(c, &row.acn));
    if (!ent_chain_is_closed(c) && ent_chain_edge_count(c) == 4) {
      double pk = 0.0;
      check(ent_p_k21(c, &pk, nullptr, nullptr));
      row.p_k21 = pk;
    }
  }
  return row;
}

void print_csv(const std::vector<Row>& rows, const Config& cfg, bool geometry) {
  std::set<int, std::greater<int>> keys;
  bool mc = false;
  for (const Row& r : rows) {
    for (const auto& [k, v] : r.coeffs) keys.insert(k);
    mc = mc || r.mc;
  }
  std::cout << "frame";
  for (int k : keys) std::cout << ",term:" << exponent_label(k);
  if (mc)
    for (int k : keys) std::cout << ",stderr:" << exponent_label(k);
  for (double x : cfg.eval_at) std::cout << ",eval:" << num(x);
  if (geometry) std::cout << ",writhe,acn,p_k21";
  std::cout << ",rejected_rate\n";
  for (size_t f = 0; f < rows.size(); ++f) {
    const Row& r = rows[f];
    std::cout << f;
    for (int k : keys) std::cout << ',' << num(r.coeffs.count(k) ? r.coeffs.at(k) : 0.0);
    if (mc)
      for (int k : keys) std::cout << ',' << num(r.errs.count(k) ? r.errs.at(k) : 0.0);
    for (double v : r.evals) std::cout << ',' << num(v);
    if (geometry)
      std::cout << ',' << num(r.writhe) << ',' << num(r.acn) << ',' << (r.p_k21 ? num(*r.p_k21) : std::string());
    std::cout << ',' << num(r.rejected_rate) << '\n';
  }
}

json row_json(const Row& r, size_t index, char var, const Config& cfg, bool geometry) {
  json j{{"chain", index}, {"method", r.mc ? "mc" : "exact"}, {"variable", std::string(1, var)},
         {"polynomial", r.poly_json}};
  if (r.mc) {
    json se = json::array();
    for (auto it = r.errs.rbegin(); it != r.errs.rend(); ++it) se.push_back({it->first, it->second});
    j["stderr"] = se;
    j["samples"] = r.samples;
    j["seed"] = cfg.seed;
    j["rejected_rate"] = r.rejected_rate;
  }
  if (!cfg.eval_at.empty()) {
    json ev = json::array();
    for (size_t i = 0; i < cfg.eval_at.size(); ++i) ev.push_back({cfg.eval_at[i], r.evals[i]});
    j["eval"] = ev;
  }
  if (geometry) {
    j["writhe"] = r.writhe;
    j["acn"] = r.acn;
    j["p_k21"] = r.p_k21 ? json(*r.p_k21) : json(nullptr);
  }
  if (r.verified) j["verify"] = {{"pass", *r.verified}, {"max_z", r.max_z}};
  return j;
}

int run_poly(const Config& cfg, bool jones, bool trajectory) {
  std::vector<ListPtr> lists;
  for (const auto& in : cfg.inputs) lists.push_back(load(in));
  const auto chains = all_chains(lists);
  if (trajectory) {
    for (const ent_chain_t* c : chains)
      if (ent_chain_vertex_count(c) != ent_chain_vertex_count(chains[0]) ||
          ent_chain_is_closed(c) != ent_chain_is_closed(chains[0]))
        throw Failure{ENT_ERR_INVALID_ARGUMENT, "trajectory frames differ in vertex count or closure"};
  }
  char var = jones ? 't' : 'A';
  if (!cfg.variable.empty()) var = cfg.variable[0];
  std::vector<Row> rows;
  for (const ent_chain_t* c : chains) rows.push_back(make_row(c, jones, var, cfg, trajectory));

  const std::string fmt = cfg.format;
  if (fmt == "csv") {
    print_csv(rows, cfg, trajectory);
  } else if (fmt == "json") {
    json out = json::array();
    for (size_t i = 0; i < rows.size(); ++i) out.push_back(row_json(rows[i], i, var, cfg, trajectory));
    std::cout << out.dump(2) << '\n';
  } else {
    for (size_t i = 0; i < rows.size(); ++i) {
      const Row& r = rows[i];
      std::cout << "chain " << i << ": " << r.rendered << '\n';
      if (r.mc) {
        std::cout << "  stderr:";
        for (auto it = r.errs.rbegin(); it != r.errs.rend(); ++it)
          std::cout << ' ' << exponent_label(it->first) << '=' << num(it->second);
        std::cout << "\n  samples: " << r.samples << ", rejected rate: " << num(r.rejected_rate) << '\n';
      }
      for (size_t e = 0; e < cfg.eval_at.size(); ++e)
        std::cout << "  " << var << '=' << num(cfg.eval_at[e]) << ": " << num(r.evals[e]) << '\n';
      if (trajectory) {
        std::cout << "  writhe " << num(r.writhe) << ", acn " << num(r.acn);
        if (r.p_k21) std::cout << ", p_k21 " << num(*r.p_k21);
        std::cout << '\n';
      }
      if (r.verified)
        std::cout << "  verify: " << (*r.verified ? "pass" : "FAIL") << " (max z " << num(r.max_z) << ")\n";
    }
  }
  for (const Row& r : rows)
    if (r.verified && !*r.verified) return 3;
  return 0;
}

int run_scalar(const Config& cfg, const std::string& what) {
  std::vector<ListPtr> lists;
  for (const auto& in : cfg.inputs) lists.push_back(load(in));
  const auto chains = all_chains(lists);
  json out = json::array();
  std::vector<std::string> lines;
  if (what == "lk") {
    if (chains.size() < 2) throw Failure{ENT_ERR_INVALID_ARGUMENT, "lk needs at least two chains"};
    for (size_t a = 0; a < chains.size(); ++a)
      for (size_t b = a + 1; b < chains.size(); ++b) {
        double v = 0.0;
        check(ent_gauss_linking(chains[a], chains[b], &v));
        out.push_back({{"a", a}, {"b", b}, {"lk", v}});
        lines.push_back(std::to_string(a) + "," + std::to_string(b) + "," + num(v));
      }
  } else {
    for (size_t i = 0; i < chains.size(); ++i) {
      double v = 0.0;
      check(what == "writhe" ? ent_writhe(chains[i], &v) : ent_acn(chains[i], &v));
      out.push_back({{"chain", i}, {what, v}});
      lines.push_back(std::to_string(i) + "," + num(v));
    }
  }
  if (cfg.format == "json") {
    std::cout << out.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    std::cout << (what == "lk" ? "a,b,lk" : "chain," + what) << '\n';
    for (const auto& l : lines) std::cout << l << '\n';
  } else {
    for (const auto& j : out) {
      if (what == "lk")
        std::cout << "lk(" << j["a"] << ", " << j["b"] << ") = " << num(j["lk"].get<double>()) << '\n';
      else
        std::cout << "chain " << j["chain"] << ": " << what << " = " << num(j[what].get<double>()) << '\n';
    }
  }
  return 0;
}

int run_distribution(const Config& cfg) {
  std::vector<ListPtr> lists;
  for (const auto& in : cfg.inputs) lists.push_back(load(in));
  const auto chains = all_chains(lists);
  json out = json::array();
  const ent_mc_options o = mc_opts(cfg);
  if (cfg.format == "csv") std::cout << "chain,class,writhe,probability,stderr\n";
  for (size_t i = 0; i < chains.size(); ++i) {
    ent_distribution_t* d = nullptr;
    check(ent_mc_distribution(chains[i], &o, &d));
    DistPtr dist(d);
    char* s = nullptr;
    check(ent_distribution_to_json(d, &s));
    json j = json::parse(take(s));
    j["chain"] = i;
    out.push_back(j);
    if (cfg.format == "text") std::cout << "chain " << i << ":\n";
    for (size_t e = 0; e < ent_distribution_size(d); ++e) {
      const char* cls = nullptr;
      int w = 0;
      double p = 0.0, se = 0.0;
      check(ent_distribution_entry(d, e, &cls, &w, &p, &se));
      if (cfg.format == "csv")
        std::cout << i << ',' << cls << ',' << w << ',' << num(p) << ',' << num(se) << '\n';
      else if (cfg.format == "text")
        std::cout << "  " << cls << " writhe " << w << ": " << num(p) << " +/- " << num(se) << '\n';
    }
  }
  if (cfg.format == "json") std::cout << out.dump(2) << '\n';
  return 0;
}

void add_common(CLI::App* app, Config& cfg, bool poly) {
  app->add_option("inputs", cfg.inputs, "Chain files (text or JSON)")->required()->check(CLI::ExistingFile);
  app->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  if (!poly) return;
  app->add_option("--samples", cfg.samples, "Monte-Carlo sample count")->check(CLI::Range(100ull, 1ull << 40));
  app->add_option("--seed", cfg.seed, "Monte-Carlo seed");
  app->add_option("--threads", cfg.threads, "Worker threads (0: all cores)");
  app->add_flag("--exact,!--no-exact", cfg.exact, "Use finite forms (default for chains with at most 4 edges)");
  app->add_option("--variable", cfg.variable, "Polynomial variable")->check(CLI::IsMember({"A", "t"}));
  app->add_flag("--verify", cfg.verify, "Cross-check finite forms against Monte-Carlo (3 sigma)");
  app->add_option("--eval", cfg.eval_at, "Evaluate at these variable values")->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement measures of polygonal curves: linking, writhe, bracket and Jones polynomials"};
  app.require_subcommand(1);
  Config cfg;
  auto* lk = app.add_subcommand("lk", "Gauss linking integral of every pair of chains");
  auto* wr = app.add_subcommand("writhe", "Writhe of each chain");
  auto* ac = app.add_subcommand("acn", "Average crossing number of each chain");
  auto* br = app.add_subcommand("bracket", "Projection-averaged Kauffman bracket");
  auto* jo = app.add_subcommand("jones", "Projection-averaged Jones polynomial");
  auto* di = app.add_subcommand("distribution", "Knotoid type and writhe frequencies (4-edge open chains)");
  auto* tr = app.add_subcommand("trajectory", "Per-frame invariants of a chain trajectory");
  for (auto* s : {lk, wr, ac}) add_common(s, cfg, false);
  for (auto* s : {br, jo, tr}) add_common(s, cfg, true);
  add_common(di, cfg, false);
  di->add_option("--samples", cfg.samples, "Monte-Carlo sample count")->check(CLI::Range(100ull, 1ull << 40));
  di->add_option("--seed", cfg.seed, "Monte-Carlo seed");
  di->add_option("--threads", cfg.threads, "Worker threads (0: all cores)");
  tr->add_option("--invariant", cfg.invariant, "Polynomial per frame")->check(CLI::IsMember({"jones", "bracket"}));
  tr->callback([&] {
    if (tr->count("--format") == 0) cfg.format = "csv";
  });

  CLI11_PARSE(app, argc, argv);

  try {
    if (lk->parsed()) return run_scalar(cfg, "lk");
    if (wr->parsed()) return run_scalar(cfg, "writhe");
    if (ac->parsed()) return run_scalar(cfg, "acn");
    if (br->parsed()) return run_poly(cfg, false, false);
    if (jo->parsed()) return run_poly(cfg, true, false);
    if (tr->parsed()) return run_poly(cfg, cfg.invariant == "jones", true);
    if (di->parsed()) return run_distribution(cfg);
  } catch (const Failure& f) {
    std::cerr << "error: " << ent_status_name(f.status) << ": " << f.message << '\n';
    return 2;
  }
  return 1;
}
