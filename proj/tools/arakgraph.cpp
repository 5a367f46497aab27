// arakgraph: command-line front end.
//
// Exit status: 0 success, 1 usage or parse error, 2 semantic error,
// 3 identity violation.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "arakgraph/degeneration.hpp"
#include "arakgraph/document.hpp"
#include "arakgraph/pairing.hpp"
#include "arakgraph/random.hpp"

namespace {

using namespace arakgraph;

constexpr int kExitUsage = 1;
constexpr int kExitSemantic = 2;
constexpr int kExitIdentity = 3;

struct Options {
  std::string file;
  std::string x, y;
  std::optional<std::string> p, q;
  std::optional<int> decimal;
  std::string format = "text";
  std::size_t random = 0;
  std::optional<std::uint64_t> seed;
  bool inject_fault = false;
};

GraphDocument load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str());
}

/// A section name, or else a vertex id.
VertexId resolve_vertex(const GraphDocument& doc, const WeightedMultigraph& g,
                        const std::string& name) {
  std::string target = name;
  if (auto it = doc.sections.find(name); it != doc.sections.end()) target = it->second;
  auto v = g.find_vertex(target);
  if (!v) throw Error(ErrorKind::UnknownPoint, "no section or vertex named '" + name + "'");
  return *v;
}

Report cmd_invariants(const Options& o) {
  const GraphDocument doc = load(o.file);
  const PolarizedMetrizedGraph p = polarized_graph_of(doc);
  const WeightedMultigraph& g = p.model();
  Report r;
  r.add("genus", Rational(p.genus()), "h = deg K / 2 + 1");
  r.add("delta", g.volume(), "total length");
  r.add("betti", Rational(static_cast<long>(betti_number(g))), "first Betti number");
  r.add("treeConstant", weighted_tree_count(g), "sum over spanning trees of conductance products");
  r.add("tau", p.tau(), "tau invariant");
  r.add("eta", eta(p.graph()), "eta invariant of this model");
  r.add("epsilon", epsilon(p), "epsilon invariant");
  r.add("c", c_constant(p), "-g(x,x) - g(K,x)");
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    r.add("foster." + g.edge(e).name, p.graph().foster(e), "Foster coefficient");
  }
  return r;
}

Report cmd_green(const Options& o) {
  const GraphDocument doc = load(o.file);
  const PolarizedMetrizedGraph p = polarized_graph_of(doc);
  const Point x = parse_point(p.model(), o.x);
  const Point y = parse_point(p.model(), o.y);
  Report r;
  r.add("g_mu", green_admissible(p, x, y), "admissible Green's function");
  r.add("r", resistance(p.graph(), x, y), "effective resistance");
  if (x.is_vertex() && y.is_vertex()) {
    r.add("gbar", green_pseudoinverse(p.model(), x.vertex, y.vertex), "Laplacian pseudo-inverse entry");
  }
  return r;
}

Report cmd_resistance(const Options& o) {
  const GraphDocument doc = load(o.file);
  const MetrizedGraph gamma(build_graph(graph_spec(doc)));
  Report r;
  r.add("r", resistance(gamma, parse_point(gamma.model(), o.x), parse_point(gamma.model(), o.y)),
        "effective resistance");
  return r;
}

Report cmd_asymptotics(const Options& o) {
  const NodalFiberSpec fiber = fiber_of(load(o.file));
  const AsymptoticsReport a = delta_asymptotics(fiber);
  Report r;
  r.add("delta", a.delta, "number of singular points counted with multiplicity");
  r.add("epsilon", a.epsilon, "epsilon invariant");
  r.add("deltaSlope", a.deltaSlope, "delta_F ~ -deltaSlope log|t|");
  r.add("bettiNumber", Rational(static_cast<long>(a.bettiNumber)), "first Betti number");
  r.add("treeConstant", a.treeConstant, "sum over spanning trees of conductance products");
  r.add_text("note", a.note);
  if (o.q && !o.p) throw Error(ErrorKind::MissingSection, "--q requires --p");
  if (o.p) {
    const ArakelovReport ar = arakelov_asymptotics(fiber, *o.p, o.q);
    r.add("metricSlope", ar.metricSlope, "log||dz(P)||_Ar ~ metricSlope log|t|");
    if (ar.greenSlope) r.add("greenSlope", *ar.greenSlope, "g_Ar(P,Q) ~ greenSlope log|t|");
  }
  const LearReport lear = lear_coefficients(fiber, o.p, o.q);
  const std::map<std::string, std::string> descriptions{
      {"omegaOmega", "<omega,omega> Lear coefficient"},
      {"POmega", "<O(P),omega> Lear coefficient"},
      {"PQ", "<O(P),O(Q)> Lear coefficient"},
      {"kappaB", "kappa_1 boundary coefficient"},
      {"deltaB", "Deligne pairing difference coefficient"},
      {"deltaPBsq", "Lear extension of the self-pairing"},
      {"deltaPBsq_ofLears", "self-pairing of Lear extensions, smooth model"}};
  for (const auto& [key, value] : lear.entries()) r.add(key, value, descriptions.at(key));
  return r;
}

Report cmd_pairing(const Options& o) {
  const GraphDocument doc = load(o.file);
  const PolarizedMetrizedGraph p = polarized_graph_of(doc);
  const AdmissibleBundle omega = omega_a(p);
  Report r;
  r.add("omegaOmega", intersection(p, omega, omega), "(omega_a, omega_a)");
  r.add("epsilon", epsilon(p), "epsilon invariant");
  if (!o.x.empty()) {
    const AdmissibleBundle bx = admissible_of_point(p, resolve_vertex(doc, p.model(), o.x));
    r.add("PP", intersection(p, bx, bx), "(O(P)_a, O(P)_a)");
    r.add("POmega", intersection(p, bx, omega), "(O(P)_a, omega_a)");
    r.add("adjunction", intersection(p, bx, tensor(omega, bx)), "(O(P)_a, omega_a + O(P)_a)");
    if (!o.y.empty()) {
      const AdmissibleBundle by = admissible_of_point(p, resolve_vertex(doc, p.model(), o.y));
      r.add("PQ", intersection(p, bx, by), "(O(P)_a, O(Q)_a)");
    }
  }
  return r;
}

int cmd_desingularize(const Options& o) {
  std::cout << emit_document(document_of(desingularize(fiber_of(load(o.file)))));
  return 0;
}

/// Folds a suite into the running tally, one report line per identity.
void tally(const IdentityReport& suite, std::map<std::string, std::size_t>& failures,
           std::vector<std::string>& order) {
  for (const IdentityCheck& c : suite.checks) {
    if (!failures.count(c.name)) {
      failures[c.name] = 0;
      order.push_back(c.name);
    }
    if (!c.passed()) failures[c.name] += 1;
  }
}

int cmd_check(const Options& o) {
  IdentityOptions options;
  if (o.inject_fault) options.epsilon_fault = 1;
  std::map<std::string, std::size_t> failures;
  std::vector<std::string> order;
  std::size_t evaluated = 0;

  if (!o.file.empty()) {
    const GraphDocument doc = load(o.file);
    std::mt19937_64 rng(o.seed.value_or(0));
    tally(verify_identities(polarized_graph_of(doc), rng, options), failures, order);
    if (doc.is_fiber()) tally(verify_fiber(fiber_of(doc), rng), failures, order);
    evaluated = 1;
  } else {
    std::mt19937_64 rng(*o.seed);
    for (std::size_t i = 0; i < o.random; ++i) {
      tally(verify_identities(random_polarized_graph(rng), rng, options), failures, order);
      tally(verify_fiber(random_fiber(rng), rng), failures, order);
    }
    evaluated = o.random;
  }

  Report r;
  std::size_t failed = 0;
  for (const std::string& name : order) {
    r.add_text("check." + name, failures[name] == 0 ? "pass" : "FAIL",
               failures[name] == 0 ? "" : std::to_string(failures[name]) + " failing input(s)");
    if (failures[name] != 0) ++failed;
  }
  r.add("inputs", Rational(static_cast<long>(evaluated)));
  r.add("failed", Rational(static_cast<long>(failed)));
  std::cout << render(r, o.format == "machine" ? ReportFormat::Machine : ReportFormat::Text);
  return failed == 0 ? 0 : kExitIdentity;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invariants of polarized metrized graphs and degenerating curves"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--decimal", o.decimal, "Also print decimal approximations with DIGITS digits")
      ->check(CLI::Range(0, 100));
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "machine"}))
      ->capture_default_str();

  auto* invariants = app.add_subcommand("invariants", "Scalar invariants of a graph or fiber");
  invariants->add_option("FILE", o.file)->required();

  auto* green = app.add_subcommand("green", "Admissible Green's function between two points");
  green->add_option("FILE", o.file)->required();
  green->add_option("X", o.x, "vertex id or edge:ID@p/q")->required();
  green->add_option("Y", o.y, "vertex id or edge:ID@p/q")->required();

  auto* res = app.add_subcommand("resistance", "Effective resistance between two points");
  res->add_option("FILE", o.file)->required();
  res->add_option("X", o.x)->required();
  res->add_option("Y", o.y)->required();

  auto* asym = app.add_subcommand("asymptotics", "Leading coefficients of the degeneration");
  asym->add_option("FILE", o.file)->required();
  asym->add_option("--p", o.p, "Section name P");
  asym->add_option("--q", o.q, "Section name Q");

  auto* pairing = app.add_subcommand("pairing", "Admissible intersection numbers");
  pairing->add_option("FILE", o.file)->required();
  pairing->add_option("X", o.x, "section name or vertex id");
  pairing->add_option("Y", o.y, "section name or vertex id");

  auto* desing = app.add_subcommand("desingularize", "Replace multiple nodes by chains");
  desing->add_option("FILE", o.file)->required();

  auto* check = app.add_subcommand("check", "Run the identity suite");
  check->add_option("FILE", o.file);
  auto* random = check->add_option("--random", o.random, "Number of random graphs and fibers");
  auto* seed = check->add_option("--seed", o.seed, "Generator seed");
  random->needs(seed);
  random->excludes(check->get_option("FILE"));
  check->add_flag("--inject-fault", o.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  if (check->parsed() && o.file.empty() && o.random == 0) {
    std::cerr << "check: give FILE or --random N --seed S\n";
    return kExitUsage;
  }

  try {
    if (desing->parsed()) return cmd_desingularize(o);
    if (check->parsed()) return cmd_check(o);
    Report report;
    if (invariants->parsed()) report = cmd_invariants(o);
    if (green->parsed()) report = cmd_green(o);
    if (res->parsed()) report = cmd_resistance(o);
    if (asym->parsed()) report = cmd_asymptotics(o);
    if (pairing->parsed()) report = cmd_pairing(o);
    std::cout << render(report, o.format == "machine" ? ReportFormat::Machine : ReportFormat::Text,
                        o.decimal);
    return 0;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::ParseError: return kExitUsage;
      case ErrorKind::IdentityViolation: return kExitIdentity;
      default: return kExitSemantic;
    }
  }
}
