// logpic: command-line front end. Output is sorted-key JSON on stdout.
// Exit codes: 0 ok, 1 a checked identity failed, 2 bad input.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "logpic/chip_firing.hpp"
#include "logpic/errors.hpp"
#include "logpic/fixtures.hpp"
#include "logpic/harness.hpp"
#include "logpic/io.hpp"
#include "logpic/log_curve.hpp"
#include "logpic/metrized_complex.hpp"

using namespace logpic;
using io::Json;

namespace {

struct Options {
  std::string kind;
  std::string verb;
  std::vector<std::string> inputs;
  std::vector<std::string> divisors;
  std::optional<std::string> base;
  Chips torus = 2;
  std::uint64_t seed = 1;
  std::size_t max_vertices = 3;
  std::size_t max_edges = 4;
  std::size_t instances = 20;
  std::string window;
  bool naive = false;
  std::string out;
};

struct Outcome {
  Json json;
  bool violation = false;
};

std::optional<std::pair<Chips, Chips>> parse_window(const std::string& s) {
  if (s.empty()) return std::nullopt;
  static const std::regex re(R"((-?\d+)\.\.(-?\d+))");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw InputError("--degree-window: expected lo..hi, got '" + s + "'");
  return std::pair<Chips, Chips>{std::stoll(m[1]), std::stoll(m[2])};
}

SweepConfig config(const Options& o) {
  SweepConfig cfg;
  cfg.seed = o.seed;
  cfg.max_vertices = o.max_vertices;
  cfg.max_edges = o.max_edges;
  cfg.instances = o.instances;
  cfg.degree_window = parse_window(o.window);
  cfg.torus_orders = {o.torus};
  cfg.validate();
  return cfg;
}

const std::string& input(const Options& o) {
  if (o.inputs.empty()) throw InputError(o.kind + " " + o.verb + ": missing input file");
  return o.inputs.front();
}

std::vector<Json> divisor_files(const Options& o, std::size_t count, const char* flag) {
  if (o.divisors.size() != count)
    throw InputError(o.verb + ": expected " + std::to_string(count) + " " + flag + " file(s)");
  std::vector<Json> out;
  for (const auto& p : o.divisors) out.push_back(io::read_file(p));
  return out;
}

Outcome report(const SweepReport& r) { return {r.to_json(), !r.pass()}; }

Outcome run_graph(const Options& o) {
  if (o.verb == "sweep") {
    auto cfg = config(o);
    return report(sweep_rr_graph(cfg, o.naive ? RankSemantics::BakerNorine : RankSemantics::LoopCorrected));
  }
  const Multigraph g = io::graph_from_json(io::read_file(input(o)));
  g.require_valid();
  const auto semantics = o.naive ? RankSemantics::BakerNorine : RankSemantics::LoopCorrected;
  if (o.verb == "rank") {
    const auto d = io::divisor_from_json(g, divisor_files(o, 1, "--divisor")[0]);
    return {{{"rank", GraphRankEngine(g, semantics).rank(d)}}};
  }
  if (o.verb == "reduce") {
    const auto d = io::divisor_from_json(g, divisor_files(o, 1, "--divisor")[0]);
    const std::size_t q = o.base ? g.vertex_index(*o.base) : 0;
    const auto r = q_reduce_with_script(g, d, q);
    return {{{"base", g.vertex(q).id},
             {"reduced", io::divisor_to_json(g, r.reduced)},
             {"script", io::divisor_to_json(g, GraphDivisor(r.script))}}};
  }
  if (o.verb == "equiv") {
    const auto files = divisor_files(o, 2, "--divisor");
    return {{{"equivalent", is_equivalent(g, io::divisor_from_json(g, files[0]), io::divisor_from_json(g, files[1]))}}};
  }
  if (o.verb == "jacobian") {
    Json inv = Json::array();
    Integer order = 1;
    for (const auto& f : jacobian(g)) {
      inv.push_back(to_chips(f));
      order *= f;
    }
    return {{{"invariants", inv}, {"order", to_chips(order)}}};
  }
  if (o.verb == "canonical") return {{{"canonical", io::divisor_to_json(g, canonical_divisor(g))}}};
  if (o.verb == "rr-check") return report(sweep_rr_graph(config(o), semantics, {g}));
  throw InputError("verb '" + o.verb + "' is not available for graphs");
}

std::vector<LabelledCurve> single(const std::string& path, const LogCurve& x) { return {{path, x}}; }

Outcome run_complex(const Options& o) {
  if (o.verb == "sweep") {
    const auto cfg = config(o);
    std::vector<MetrizedComplex> list;
    SweepRng rng(cfg.seed);
    for (std::size_t i = 0; i < cfg.instances; ++i) list.push_back(gen_complex(cfg, rng));
    return report(sweep_rr_complex(cfg, list));
  }
  const MetrizedComplex c = io::complex_from_json(io::read_file(input(o)));
  c.require_valid();
  auto class_arg = [&](std::size_t i, const std::vector<Json>& files) {
    return class_of(c, io::complex_divisor_from_json(c, files[i]));
  };
  if (o.verb == "rank") {
    const auto a = class_arg(0, divisor_files(o, 1, "--divisor"));
    return {{{"rank", o.naive ? rank_naive(c, a) : rank(c, a)}}};
  }
  if (o.verb == "reduce") {
    const auto a = class_arg(0, divisor_files(o, 1, "--divisor"));
    return {{{"class", io::class_to_json(c, ComplexRankEngine(c, false).canonical_form(a))}}};
  }
  if (o.verb == "equiv") {
    const auto files = divisor_files(o, 2, "--divisor");
    return {{{"equivalent", is_equivalent(c, class_arg(0, files), class_arg(1, files))}}};
  }
  if (o.verb == "canonical") {
    const auto k = canonical(c);
    Json j{{"class", io::class_to_json(c, k.cls)}};
    if (k.representative) j["representative"] = io::complex_divisor_to_json(*k.representative);
    return {j};
  }
  if (o.verb == "tropicalize") return {{{"graph", io::to_json(c.graph())}}};
  if (o.verb == "rr-check") return report(sweep_rr_complex(config(o), {c}));
  const LogCurve x = from_complex(c).curve;
  if (o.verb == "clifford") return report(sweep_clifford(config(o), single(input(o), x)));
  if (o.verb == "roundtrip") return report(sweep_roundtrip(config(o), single(input(o), x)));
  throw InputError("verb '" + o.verb + "' is not available for complexes");
}

Outcome run_curve(const Options& o) {
  if (o.verb == "sweep") {
    const auto cfg = config(o);
    const auto b = run_curve_battery(cfg, random_curves(cfg));
    Json j{{"riemannRoch", b.rr.to_json()},
           {"rationalEquality", b.rational_equality.to_json()},
           {"specialization", b.specialization.to_json()},
           {"clifford", b.clifford.to_json()},
           {"direct", b.direct.to_json()}};
    return {j, !(b.rr.pass() && b.rational_equality.pass() && b.specialization.pass() && b.clifford.pass() &&
                 b.direct.pass())};
  }
  const LogCurve x = io::curve_from_json(io::read_file(input(o)));
  x.require_valid();
  auto bundles = [&](std::size_t count) {
    std::vector<LogLineBundle> out;
    for (const auto& j : divisor_files(o, count, "--bundle")) out.push_back(io::bundle_from_json(x, j));
    return out;
  };
  const TorusModel torus{o.torus};
  if (o.verb == "rank") {
    const auto l = bundles(1)[0];
    return {{{"rank", comb_rank(x, l)}}};
  }
  if (o.verb == "reduce") {
    const auto l = bundles(1)[0];
    require_rank_ready(x);
    LogLineBundle r = normalize_gluing(x, l, torus);
    r.classes = ComplexRankEngine(x.complex(), false).canonical_form(l.classes);
    return {{{"bundle", io::bundle_to_json(x, r)}, {"tau", io::divisor_to_json(x.complex().graph(), tau(x, l))}}};
  }
  if (o.verb == "equiv") {
    const auto ls = bundles(2);
    return {{{"equivalent", log_class_equal(x, ls[0], ls[1], torus)}}};
  }
  if (o.verb == "canonical") return {{{"bundle", io::bundle_to_json(x, omega_log(x))}}};
  if (o.verb == "tropicalize") {
    Json j{{"graph", io::to_json(x.complex().graph())}};
    if (!o.divisors.empty()) j["tau"] = io::divisor_to_json(x.complex().graph(), tau(x, bundles(1)[0]));
    return {j};
  }
  if (o.verb == "to-complex") return {io::to_json(to_complex(x))};
  if (o.verb == "ses-check") {
    const auto k = quotient_kernel(x, torus);
    return {{{"kernelOrder", k.order}, {"expected", k.expected}}, k.order != k.expected};
  }
  if (o.verb == "rr-check") return report(sweep_rr_curve(config(o), single(input(o), x)));
  if (o.verb == "clifford") return report(sweep_clifford(config(o), single(input(o), x)));
  if (o.verb == "roundtrip") return report(sweep_roundtrip(config(o), single(input(o), x)));
  throw InputError("verb '" + o.verb + "' is not available for curves");
}

void write_fixtures(const std::string& dir) {
  if (dir.empty()) throw InputError("fixtures: --out is required");
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const Json& j) {
    std::ofstream f(std::filesystem::path(dir) / (name + ".json"), std::ios::binary);
    if (!f) throw InputError("cannot write " + name + ".json in " + dir);
    f << io::dump(j);
  };
  for (const auto& [name, g] : graph_fixtures()) write(name, io::to_json(g));
  for (const auto& [name, c] : complex_fixtures()) write(name, io::to_json(c));
  for (const auto& [name, x] : curve_fixtures()) write(name, io::to_json(x));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Divisors, ranks and Riemann-Roch checks on log curves and metrized curve complexes"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("verb", o.verb, "operation")->required();
    sub->add_option("input", o.inputs, "input JSON file");
    sub->add_option("--divisor", o.divisors, "divisor JSON file (repeat for equiv)")->allow_extra_args(false);
    sub->add_option("--bundle", o.divisors, "bundle JSON file (repeat for equiv)")->allow_extra_args(false);
    sub->add_option("--base", o.base, "base vertex id for reduce");
    sub->add_option("--torus", o.torus, "order of the finite torus");
    sub->add_option("--seed", o.seed, "sweep seed");
    sub->add_option("--max-vertices", o.max_vertices, "sweep bound");
    sub->add_option("--max-edges", o.max_edges, "sweep bound");
    sub->add_option("--instances", o.instances, "random instances in a sweep");
    sub->add_option("--degree-window", o.window, "lo..hi");
    sub->add_flag("--naive-rank", o.naive, "loop-blind rank");
  };
  for (const char* kind : {"graph", "complex", "curve"}) {
    auto* sub = app.add_subcommand(kind, std::string("operations on a ") + kind);
    add_common(sub);
    sub->callback([&o, kind] { o.kind = kind; });
  }
  auto* fx = app.add_subcommand("fixtures", "write the named fixtures as JSON files");
  fx->add_option("--out", o.out, "output directory")->required();
  fx->callback([&o] { o.kind = "fixtures"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (o.kind == "fixtures") {
      write_fixtures(o.out);
      return 0;
    }
    Outcome out;
    if (o.kind == "graph") out = run_graph(o);
    else if (o.kind == "complex") out = run_complex(o);
    else out = run_curve(o);
    std::cout << io::dump(out.json);
    return out.violation ? 1 : 0;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const UnsupportedModel& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
