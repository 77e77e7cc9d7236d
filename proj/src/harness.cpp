#include "logpic/harness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "logpic/errors.hpp"
#include "logpic/fixtures.hpp"
#include "logpic/graph_zoo.hpp"

namespace logpic {

io::Json SweepConfig::to_json() const {
  io::Json j;
  j["seed"] = seed;
  j["maxVertices"] = max_vertices;
  j["maxEdges"] = max_edges;
  j["maxGroupOrder"] = max_group_order;
  j["degreeWindow"] = degree_window ? io::Json{degree_window->first, degree_window->second} : io::Json("default");
  j["instances"] = instances;
  j["monoidRank"] = monoid_rank;
  j["genusOne"] = allow_genus_one;
  j["marks"] = allow_marks;
  j["torusOrders"] = torus_orders;
  j["directWorkCap"] = direct_work_cap;
  return j;
}

void SweepConfig::validate() const {
  if (max_vertices < 1 || max_group_order < 1 || monoid_rank < 1)
    throw InputError("sweep bounds must be positive");
  if (degree_window && degree_window->first > degree_window->second)
    throw InputError("degree window needs lo <= hi");
  for (Chips m : torus_orders)
    if (m < 1) throw InputError("torus orders must be positive");
}

io::Json SweepReport::to_json() const {
  std::vector<const Violation*> sorted;
  for (const auto& v : violations) sorted.push_back(&v);
  std::stable_sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->size < b->size; });
  io::Json vs = io::Json::array();
  for (const auto* v : sorted)
    vs.push_back({{"identity", v->identity}, {"label", v->instance_label}, {"instance", v->instance},
                  {"detail", v->detail}});
  io::Json j{{"checked", checked}, {"violations", vs}, {"config", config}};
  if (!sorted.empty()) j["minimal"] = vs[0];
  for (const auto& [k, v] : extra.items()) j[k] = v;
  return j;
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> random_edges(const SweepConfig& cfg, SweepRng& rng, std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 1; i < n; ++i) edges.emplace_back(rng.below(i), i);
  const std::size_t lo = n - 1, hi = std::max(n - 1, cfg.max_edges);
  const std::size_t m = lo + rng.below(hi - lo + 1);
  while (edges.size() < m) edges.emplace_back(rng.below(n), rng.below(n));
  return edges;
}

Multigraph with_lengths(const Multigraph& g, std::size_t rank, SweepRng& rng) {
  if (rank == 1) return g;
  auto edges = g.edges();
  for (auto& e : edges) {
    std::vector<std::uint64_t> c(rank, 0);
    while (std::all_of(c.begin(), c.end(), [](auto x) { return x == 0; }))
      for (auto& x : c) x = rng.below(3);
    e.length = MonoidElement(c);
  }
  return Multigraph(g.vertices(), edges, rank);
}

std::string describe(const Multigraph& g) {
  std::string s = std::to_string(g.num_vertices()) + "v";
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    s += " " + g.vertex(g.endpoint(e, 0)).id + "-" + g.vertex(g.endpoint(e, 1)).id;
  return s;
}

}  // namespace

Multigraph gen_graph(const SweepConfig& cfg, SweepRng& rng) {
  const std::size_t n = 1 + rng.below(cfg.max_vertices);
  return make_graph(n, random_edges(cfg, rng, n));
}

MetrizedComplex gen_complex(const SweepConfig& cfg, SweepRng& rng) {
  const std::size_t n = 1 + rng.below(cfg.max_vertices);
  const auto edges = random_edges(cfg, rng, n);
  const Multigraph shape = make_graph(n, edges);
  std::vector<std::vector<Chips>> groups(n);
  std::vector<std::int64_t> weights(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    const Chips val = valence(shape, v);
    if (!cfg.allow_genus_one || val > cfg.max_group_order || cfg.max_group_order < 2 || !rng.coin(1, 2)) continue;
    const Chips order = rng.between(std::max<Chips>(2, val), cfg.max_group_order);
    groups[v] = order == 4 && rng.coin(1, 2) ? std::vector<Chips>{2, 2} : std::vector<Chips>{order};
    weights[v] = 1;
  }
  const Multigraph g = with_lengths(make_graph(n, edges, weights), cfg.monoid_rank, rng);

  std::map<std::string, ComponentModel> comps;
  std::map<std::string, std::string> attach;
  std::vector<Mark> marks;
  for (std::size_t v = 0; v < n; ++v) {
    const auto& vid = g.vertex(v).id;
    std::vector<std::string> free;
    if (weights[v] == 1) {
      auto model = ComponentModel::elliptic(groups[v]);
      std::vector<std::string> names;
      for (const auto& p : model.points()) names.push_back(p.id);
      for (std::size_t i = names.size(); i > 1; --i) std::swap(names[i - 1], names[rng.below(i)]);
      std::size_t next = 0;
      for (const auto& h : g.half_edges_at(v)) attach[g.edge(h.edge).halves[h.side].id] = names[next++];
      free.assign(names.begin() + static_cast<std::ptrdiff_t>(next), names.end());
      comps[vid] = std::move(model);
    } else {
      std::vector<std::string> points{"p"};
      for (const auto& h : g.half_edges_at(v)) {
        const auto& hid = g.edge(h.edge).halves[h.side].id;
        points.push_back("x." + hid);
        attach[hid] = "x." + hid;
      }
      free.push_back("p");
      comps[vid] = ComponentModel::rational(points);
    }
    if (cfg.allow_marks && !free.empty() && rng.coin(1, 3)) marks.push_back({vid, free.front()});
  }
  MetrizedComplex c(g, std::move(comps), std::move(attach), std::move(marks));
  c.require_valid();
  return c;
}

LogCurve gen_curve(const SweepConfig& cfg, SweepRng& rng) { return from_complex(gen_complex(cfg, rng)).curve; }

Multigraph gen_graph(const SweepConfig& cfg) {
  SweepRng rng(cfg.seed);
  return gen_graph(cfg, rng);
}
MetrizedComplex gen_complex(const SweepConfig& cfg) {
  SweepRng rng(cfg.seed);
  return gen_complex(cfg, rng);
}
LogCurve gen_curve(const SweepConfig& cfg) {
  SweepRng rng(cfg.seed);
  return gen_curve(cfg, rng);
}

std::vector<LabelledCurve> rational_curves(std::size_t max_vertices, std::size_t max_edges) {
  std::vector<LabelledCurve> out;
  for (const auto& g : enumerate_multigraphs(max_vertices, max_edges))
    out.push_back({"rational " + describe(g), from_complex(rational_complex(g)).curve});
  return out;
}

std::vector<LabelledCurve> random_curves(const SweepConfig& cfg) {
  SweepRng rng(cfg.seed);
  std::vector<LabelledCurve> out;
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    auto x = gen_curve(cfg, rng);
    out.push_back({"random seed " + std::to_string(cfg.seed) + " #" + std::to_string(i), std::move(x)});
  }
  return out;
}

std::vector<ComplexClass> classes_of_degree(const MetrizedComplex& c, Chips d) {
  std::vector<ComplexClass> out;
  const std::size_t n = c.graph().num_vertices();
  for (const auto& rho : reduced_divisors(c.graph(), d, 0)) {
    ComplexClass a = class_from_multidegree(c, rho);
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
      if (v == n) return out.push_back(a);
      for (const auto& t : c.component(v).group().elements()) {
        a[v].torsion = t;
        rec(v + 1);
      }
    };
    rec(0);
  }
  return out;
}

namespace {

std::pair<Chips, Chips> window_for(const SweepConfig& cfg, Chips genus) {
  if (cfg.degree_window) return *cfg.degree_window;
  return {-2, 2 * genus + 2};
}

void for_each_box_divisor(std::size_t n, Chips d, Chips lo, Chips hi, const std::function<void(const GraphDivisor&)>& f) {
  GraphDivisor x(n);
  std::function<void(std::size_t, Chips)> rec = [&](std::size_t v, Chips left) {
    if (v + 1 == n) {
      if (left < lo || left > hi) return;
      x[v] = left;
      return f(x);
    }
    const Chips rest = static_cast<Chips>(n - v - 1);
    for (Chips k = lo; k <= hi; ++k) {
      if (left - k < rest * lo || left - k > rest * hi) continue;
      x[v] = k;
      rec(v + 1, left - k);
    }
  };
  rec(0, d);
}


std::size_t instance_size(const LogCurve& x) { return x.components().size() + x.nodes().size(); }

}  // namespace

std::vector<LabelledCurve> standard_curves(const SweepConfig& cfg) {
  auto out = rational_curves(3, 5);
  out.push_back({"X-NODALCUBIC", fixtures::x_nodalcubic()});
  out.push_back({"X-B2", fixtures::x_b2()});
  out.push_back({"X-ELL5", fixtures::x_ell5()});
  for (auto& r : random_curves(cfg)) out.push_back(std::move(r));
  return out;
}

SweepReport sweep_rr_graph(const SweepConfig& cfg, RankSemantics semantics, const std::vector<Multigraph>& graphs) {
  cfg.validate();
  SweepReport report;
  report.config = cfg.to_json();
  report.config["semantics"] = semantics == RankSemantics::BakerNorine ? "baker-norine" : "loop-corrected";
  const auto list = graphs.empty() ? enumerate_multigraphs(cfg.max_vertices, cfg.max_edges) : graphs;
  for (const auto& g : list) {
    GraphRankEngine engine(g, semantics);
    const Chips genus = invariants(g).genus;
    auto [lo, hi] = window_for(cfg, genus);
    std::map<std::vector<Chips>, Chips> by_class;
    for (Chips d = lo; d <= hi; ++d) {
      for_each_box_divisor(g.num_vertices(), d, -3, d + 3, [&](const GraphDivisor& div) {
        ++report.checked;
        const auto key = q_reduce(g, div, 0).coeffs();
        auto it = by_class.find(key);
        if (it == by_class.end()) it = by_class.emplace(key, engine.rr_defect(div)).first;
        if (it->second != 0)
          report.violations.push_back({"graph Riemann-Roch", describe(g), io::to_json(g),
                                       io::Json{{"divisor", io::divisor_to_json(g, div)}, {"defect", it->second}},
                                       {g.num_vertices() + g.num_edges(), d}});
      });
    }
  }
  return report;
}

BatteryReports run_curve_battery(const SweepConfig& cfg, const std::vector<LabelledCurve>& curves, bool direct) {
  cfg.validate();
  BatteryReports out;
  for (auto* r : {&out.rr, &out.rational_equality, &out.specialization, &out.clifford, &out.direct})
    r->config = cfg.to_json();
  std::size_t skipped_direct = 0, skipped_instances = 0;
  io::Json witnesses = io::Json::array();
  const Chips torus = cfg.torus_orders.empty() ? 2 : *std::max_element(cfg.torus_orders.begin(), cfg.torus_orders.end());

  for (const auto& [label, x] : curves) {
    try {
      require_rank_ready(x);
    } catch (const std::exception&) {
      ++skipped_instances;
      continue;
    }
    const auto& c = x.complex();
    CurveRankEngine engine(x);
    GraphRankEngine graph(c.graph(), RankSemantics::LoopCorrected);
    std::optional<CombRankDirect> direct_engine;
    if (direct) direct_engine.emplace(x, TorusModel{torus}, cfg.direct_work_cap);
    const Chips g = genus(c);
    const auto omega = omega_log(x);
    bool rational = true;
    for (const auto& comp : c.components()) rational = rational && comp.genus() == 0;
    auto [lo, hi] = window_for(cfg, g);
    bool witnessed = false;
    const std::size_t size = instance_size(x);

    for (Chips d = lo; d <= hi; ++d) {
      for (const auto& cls : classes_of_degree(c, d)) {
        const LogLineBundle l = bundle_from_classes(x, cls);
        const int r = engine.rank(l);
        const int rk = engine.rank(tensor(x, omega, inverse(x, l)));
        auto violation = [&](SweepReport& rep, const std::string& identity, io::Json detail) {
          detail["bundle"] = io::bundle_to_json(x, l);
          detail["degree"] = d;
          detail["genus"] = g;
          detail["rank"] = r;
          rep.violations.push_back({identity, label, io::to_json(x), std::move(detail), {size, d}});
        };

        ++out.rr.checked;
        if (r - rk != d - g + 1) violation(out.rr, "Riemann-Roch", {{"dualRank", rk}});

        const int rg = graph.rank(multidegree(l));
        ++out.specialization.checked;
        if (r > rg) violation(out.specialization, "specialization r <= r_G", {{"graphRank", rg}});
        if (rational) {
          ++out.rational_equality.checked;
          if (r != rg) violation(out.rational_equality, "rational complex rank = graph rank", {{"graphRank", rg}});
        }

        if (r >= 0 && rk >= 0) {
          ++out.clifford.checked;
          if (2 * r > d) violation(out.clifford, "Clifford 2r <= d", {{"dualRank", rk}});
          if (d == 2 && r == 1 && !witnessed) {
            witnessed = true;
            witnesses.push_back({{"label", label}, {"genus", g}, {"bundle", io::bundle_to_json(x, l)}});
          }
        }

        if (direct_engine) {
          LogLineBundle glued = l;
          for (std::size_t e = 0; e < glued.gluing.size(); ++e) glued.gluing[e] = static_cast<Chips>(e + 1) % torus;
          auto rd = direct_engine->rank(glued);
          if (!rd) {
            ++skipped_direct;
          } else {
            ++out.direct.checked;
            if (*rd != r) violation(out.direct, "direct rank = rank via complex", {{"directRank", *rd}});
          }
          ++out.direct.checked;
          bool degrees = degree(glued) == degree(cls);
          for (std::size_t v = 0; v < c.graph().num_vertices(); ++v)
            degrees = degrees && degree(tensor(x, glued, twister(x, v))) == d;
          if (!degrees) violation(out.direct, "degree preserved by the quotient", {});
        }
      }
    }
  }
  out.clifford.extra["witnesses"] = witnesses;
  out.direct.extra["skippedDirect"] = skipped_direct;
  for (auto* r : {&out.rr, &out.rational_equality, &out.specialization, &out.clifford, &out.direct})
    r->extra["skippedInstances"] = skipped_instances;
  return out;
}

SweepReport sweep_rr_complex(const SweepConfig& cfg, const std::vector<MetrizedComplex>& complexes) {
  cfg.validate();
  SweepReport report;
  report.config = cfg.to_json();
  std::vector<MetrizedComplex> list = complexes;
  if (list.empty())
    for (const auto& lc : standard_curves(cfg)) list.push_back(lc.curve.complex());
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& c = list[i];
    ComplexRankEngine engine(c);
    const Chips g = genus(c);
    auto [lo, hi] = window_for(cfg, g);
    for (Chips d = lo; d <= hi; ++d)
      for (const auto& cls : classes_of_degree(c, d)) {
        ++report.checked;
        const Chips defect = engine.rr_defect(cls);
        if (defect != 0)
          report.violations.push_back({"Riemann-Roch", "complex #" + std::to_string(i), io::to_json(c),
                                       io::Json{{"class", io::class_to_json(c, cls)}, {"defect", defect}},
                                       {c.graph().num_vertices() + c.graph().num_edges(), d}});
      }
  }
  return report;
}

SweepReport sweep_rr_curve(const SweepConfig& cfg, const std::vector<LabelledCurve>& curves) {
  return run_curve_battery(cfg, curves.empty() ? standard_curves(cfg) : curves, false).rr;
}

SweepReport sweep_specialization(const SweepConfig& cfg, const std::vector<LabelledCurve>& curves) {
  auto b = run_curve_battery(cfg, curves.empty() ? standard_curves(cfg) : curves, false);
  b.specialization.checked += b.rational_equality.checked;
  for (auto& v : b.rational_equality.violations) b.specialization.violations.push_back(std::move(v));
  return b.specialization;
}

SweepReport sweep_clifford(const SweepConfig& cfg, const std::vector<LabelledCurve>& curves) {
  return run_curve_battery(cfg, curves.empty() ? standard_curves(cfg) : curves, false).clifford;
}

SweepReport sweep_ses(const SweepConfig& cfg, const std::vector<LabelledCurve>& curves) {
  cfg.validate();
  SweepReport report;
  report.config = cfg.to_json();
  std::vector<LabelledCurve> list = curves;
  if (list.empty()) {
    list = {{"X-P2", fixtures::x_p2()}, {"X-B2", fixtures::x_b2()}, {"X-B3", fixtures::x_b3()},
            {"X-C3", fixtures::x_c3()}, {"X-NODALCUBIC", fixtures::x_nodalcubic()}};
    for (auto& r : random_curves(cfg)) list.push_back(std::move(r));
  }
  for (const auto& [label, x] : list) {
    for (Chips m : cfg.torus_orders) {
      ++report.checked;
      const auto k = quotient_kernel(x, {m});
      if (k.order != k.expected || (k.enumerated_order != 0 && k.enumerated_order != k.expected))
        report.violations.push_back({"kernel order = m^b1", label, io::to_json(x),
                                     io::Json{{"torus", m},
                                              {"order", k.order},
                                              {"enumerated", k.enumerated_order},
                                              {"expected", k.expected}},
                                     {instance_size(x), m}});
    }
  }
  return report;
}

SweepReport sweep_roundtrip(const SweepConfig& cfg, const std::vector<LabelledCurve>& curves) {
  cfg.validate();
  SweepReport report;
  report.config = cfg.to_json();
  std::vector<LabelledCurve> list = curves;
  if (list.empty()) list = random_curves(cfg);
  std::size_t automorphisms_checked = 0;
  for (const auto& [label, x] : list) {
    ++report.checked;
    auto fail = [&](const std::string& what) {
      report.violations.push_back({"roundtrip", label, io::to_json(x), io::Json{{"failure", what}}, {instance_size(x), 0}});
    };
    const MetrizedComplex c = to_complex(x);
    const auto back = from_complex(c);
    if (!same_curve_up_to_branch_order(back.curve, x)) fail("from_complex(to_complex(X)) differs from X");
    const MetrizedComplex c2 = to_complex(back.curve);
    if (!same_complex_up_to_half_edge_names(c2, c)) fail("to_complex(from_complex(C)) differs from C");
    for (std::size_t e = 0; e < c.graph().num_edges(); ++e)
      if (hom_apply(back.base, MonoidElement::unit(c.graph().num_edges(), e)) != c.graph().edge(e).length)
        fail("base map does not send e to p_e");

    const auto autos = automorphisms(c);
    if (autos.size() != automorphisms(c2).size()) fail("automorphism counts differ across the roundtrip");
    for (const auto& phi : autos) {
      ++automorphisms_checked;
      const auto psi = to_curve_automorphism(c, phi);
      if (!check_automorphism(back.curve, psi).empty()) fail("transported automorphism rejected on the curve");
      std::vector<std::string> problems;
      auto again = to_complex_automorphism(back.curve, psi, problems);
      if (!again) {
        fail("automorphism does not transport back");
        continue;
      }
      if (!check_automorphism(c2, *again).empty()) fail("automorphism rejected after the roundtrip");
      if (again->graph.vertex_map != phi.graph.vertex_map || again->points != phi.points)
        fail("automorphism changed by the roundtrip");
    }
  }
  report.extra["automorphismsChecked"] = automorphisms_checked;
  return report;
}

}  // namespace logpic
