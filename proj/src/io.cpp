#include "logpic/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "logpic/errors.hpp"

namespace logpic::io {

namespace {

std::string escape(const std::string& key) {
  std::string out;
  for (char ch : key) {
    if (ch == '~') out += "~0";
    else if (ch == '/') out += "~1";
    else out += ch;
  }
  return out;
}

std::string child(const std::string& at, const std::string& key) { return at + "/" + escape(key); }
std::string child(const std::string& at, std::size_t i) { return at + "/" + std::to_string(i); }

[[noreturn]] void fail(const std::string& at, const std::string& msg) {
  throw InputError((at.empty() ? std::string("/") : at) + ": " + msg);
}

void expect_keys(const Json& j, const std::string& at, const std::set<std::string>& required,
                 const std::set<std::string>& optional = {}) {
  if (!j.is_object()) fail(at, "expected an object");
  for (const auto& [k, _] : j.items())
    if (!required.count(k) && !optional.count(k)) fail(child(at, k), "unknown key");
  for (const auto& k : required)
    if (!j.contains(k)) fail(child(at, k), "missing required key");
}

const Json& array_at(const Json& j, const std::string& at) {
  if (!j.is_array()) fail(at, "expected an array");
  return j;
}

std::string string_at(const Json& j, const std::string& at) {
  if (!j.is_string()) fail(at, "expected a string");
  return j.get<std::string>();
}

Chips int_at(const Json& j, const std::string& at) {
  if (!j.is_number_integer()) fail(at, "expected an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
    fail(at, "integer out of range");
  return j.get<std::int64_t>();
}

std::uint64_t natural_at(const Json& j, const std::string& at) {
  if (!j.is_number_integer()) fail(at, "expected a non-negative integer");
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  const auto v = j.get<std::int64_t>();
  if (v < 0) fail(at, "expected a non-negative integer");
  return static_cast<std::uint64_t>(v);
}

std::vector<Chips> ints_at(const Json& j, const std::string& at) {
  std::vector<Chips> out;
  const auto& a = array_at(j, at);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(int_at(a[i], child(at, i)));
  return out;
}

MonoidElement monoid_at(const Json& j, const std::string& at) {
  std::vector<std::uint64_t> c;
  const auto& a = array_at(j, at);
  for (std::size_t i = 0; i < a.size(); ++i) c.push_back(natural_at(a[i], child(at, i)));
  return MonoidElement(std::move(c));
}

std::pair<std::string, std::string> pair_at(const Json& j, const std::string& at) {
  const auto& a = array_at(j, at);
  if (a.size() != 2) fail(at, "expected a pair [a, b]");
  return {string_at(a[0], child(at, 0)), string_at(a[1], child(at, 1))};
}

std::size_t rank_at(const Json& j, const std::string& at) {
  if (!j.contains("monoidRank")) return 1;
  const auto k = natural_at(j["monoidRank"], child(at, "monoidRank"));
  if (k == 0) fail(child(at, "monoidRank"), "monoid rank must be positive");
  return k;
}

MonoidElement length_at(const Json& e, const std::string& at, std::size_t rank) {
  if (!e.contains("length")) {
    if (rank != 1) fail(child(at, "length"), "length required when monoidRank > 1");
    return MonoidElement::unit(1, 0);
  }
  return monoid_at(e["length"], child(at, "length"));
}

void check(const Validation& v, const std::string& what) {
  if (!v.ok()) fail("", "invalid " + what + ": " + v.message());
}

Json mark_json(const std::vector<Mark>& marks) {
  std::vector<Mark> sorted_marks = marks;
  Json out = Json::array();
  for (const auto& m : sorted_marks) out.push_back({m.vertex, m.point});
  return out;
}

std::vector<Mark> marks_at(const Json& j, const std::string& at) {
  std::vector<Mark> out;
  const auto& a = array_at(j, at);
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [v, p] = pair_at(a[i], child(at, i));
    out.push_back({v, p});
  }
  return out;
}

Json graph_fields(const Multigraph& g) {
  Json j;
  j["monoidRank"] = g.monoid_rank();
  j["vertices"] = Json::array();
  for (const auto& v : g.vertices()) j["vertices"].push_back({{"id", v.id}, {"weight", v.weight}});
  j["edges"] = Json::array();
  for (const auto& e : g.edges()) {
    Json halves = Json::array();
    for (const auto& h : e.halves) halves.push_back({h.id, h.vertex});
    j["edges"].push_back({{"id", e.id}, {"halves", halves}, {"length", e.length.coords()}});
  }
  return j;
}

Multigraph graph_fields_from(const Json& j, const std::string& at) {
  const std::size_t rank = rank_at(j, at);
  std::vector<VertexSpec> vertices;
  const auto vat = child(at, "vertices");
  const auto& vs = array_at(j.at("vertices"), vat);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto here = child(vat, i);
    expect_keys(vs[i], here, {"id"}, {"weight"});
    vertices.push_back({string_at(vs[i]["id"], child(here, "id")),
                        vs[i].contains("weight") ? int_at(vs[i]["weight"], child(here, "weight")) : 0});
  }
  std::vector<EdgeSpec> edges;
  if (j.contains("edges")) {
    const auto eat = child(at, "edges");
    const auto& es = array_at(j["edges"], eat);
    for (std::size_t i = 0; i < es.size(); ++i) {
      const auto here = child(eat, i);
      expect_keys(es[i], here, {"id", "halves"}, {"length"});
      EdgeSpec e;
      e.id = string_at(es[i]["id"], child(here, "id"));
      const auto hat = child(here, "halves");
      const auto& hs = array_at(es[i]["halves"], hat);
      if (hs.size() != 2) fail(hat, "an edge has exactly two half-edges");
      for (int s = 0; s < 2; ++s) {
        auto [hid, vid] = pair_at(hs[s], child(hat, static_cast<std::size_t>(s)));
        e.halves[s] = {hid, vid};
      }
      e.length = length_at(es[i], here, rank);
      edges.push_back(std::move(e));
    }
  }
  return Multigraph(std::move(vertices), std::move(edges), rank);
}

}  // namespace

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const Multigraph& g) { return graph_fields(g); }

Multigraph graph_from_json(const Json& j) {
  expect_keys(j, "", {"vertices"}, {"edges", "monoidRank"});
  auto g = graph_fields_from(j, "");
  check(g.validation(), "graph");
  return g;
}

Json to_json(const ComponentModel& m) {
  Json j;
  j["genus"] = m.genus();
  j["group"] = m.group().factors();
  j["points"] = Json::array();
  for (const auto& p : m.points()) j["points"].push_back({{"id", p.id}, {"class", p.cls}});
  return j;
}

ComponentModel component_from_json(const Json& j, const std::string& at) {
  expect_keys(j, at, {"genus"}, {"group", "points"});
  const Chips genus = int_at(j["genus"], child(at, "genus"));
  std::vector<Chips> factors;
  if (j.contains("group")) factors = ints_at(j["group"], child(at, "group"));
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (factors[i] < 1) fail(child(child(at, "group"), i), "invariant factors must be positive");
  FiniteAbelianGroup group(factors);
  std::vector<ComponentPoint> points;
  if (j.contains("points")) {
    const auto pat = child(at, "points");
    const auto& ps = array_at(j["points"], pat);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const auto here = child(pat, i);
      expect_keys(ps[i], here, {"id"}, {"class"});
      ComponentPoint p{string_at(ps[i]["id"], child(here, "id")), group.zero()};
      if (ps[i].contains("class")) p.cls = ints_at(ps[i]["class"], child(here, "class"));
      points.push_back(std::move(p));
    }
  }
  if (genus < 0 || genus > INT32_MAX) fail(child(at, "genus"), "genus out of range");
  ComponentModel m(static_cast<int>(genus), std::move(group), std::move(points));
  const auto problems = m.problems();
  if (!problems.empty()) fail(at, problems.front());
  return m;
}

Json to_json(const MetrizedComplex& c) {
  Json j = graph_fields(c.graph());
  j["components"] = Json::object();
  for (const auto& [id, m] : c.component_map()) j["components"][id] = to_json(m);
  j["attach"] = Json::object();
  for (const auto& [h, p] : c.attach_map()) j["attach"][h] = p;
  j["marks"] = mark_json(c.marks());
  return j;
}

MetrizedComplex complex_from_json(const Json& j) {
  expect_keys(j, "", {"vertices", "components"}, {"edges", "monoidRank", "attach", "marks"});
  auto g = graph_fields_from(j, "");
  std::map<std::string, ComponentModel> comps;
  if (!j["components"].is_object()) fail("/components", "expected an object");
  for (const auto& [id, m] : j["components"].items()) comps[id] = component_from_json(m, child("/components", id));
  std::map<std::string, std::string> attach;
  if (j.contains("attach")) {
    if (!j["attach"].is_object()) fail("/attach", "expected an object");
    for (const auto& [h, p] : j["attach"].items()) attach[h] = string_at(p, child("/attach", h));
  }
  std::vector<Mark> marks;
  if (j.contains("marks")) marks = marks_at(j["marks"], "/marks");
  MetrizedComplex c(std::move(g), std::move(comps), std::move(attach), std::move(marks));
  check(c.validation(), "complex");
  return c;
}

Json to_json(const LogCurve& x) {
  Json j;
  j["monoidRank"] = x.monoid_rank();
  j["components"] = Json::object();
  for (const auto& [id, m] : x.components()) j["components"][id] = to_json(m);
  j["nodes"] = Json::array();
  for (const auto& n : x.nodes()) {
    Json br = Json::array();
    for (const auto& b : n.branches) br.push_back({b.component, b.point});
    j["nodes"].push_back({{"id", n.id}, {"branches", br}, {"length", n.length.coords()}});
  }
  j["marks"] = mark_json(x.marks());
  return j;
}

LogCurve curve_from_json(const Json& j) {
  expect_keys(j, "", {"components"}, {"monoidRank", "nodes", "marks"});
  const std::size_t rank = rank_at(j, "");
  std::map<std::string, ComponentModel> comps;
  if (!j["components"].is_object()) fail("/components", "expected an object");
  for (const auto& [id, m] : j["components"].items()) comps[id] = component_from_json(m, child("/components", id));
  std::vector<Node> nodes;
  if (j.contains("nodes")) {
    const auto& ns = array_at(j["nodes"], "/nodes");
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const auto here = child("/nodes", i);
      expect_keys(ns[i], here, {"id", "branches"}, {"length"});
      Node n;
      n.id = string_at(ns[i]["id"], child(here, "id"));
      const auto bat = child(here, "branches");
      const auto& bs = array_at(ns[i]["branches"], bat);
      if (bs.size() != 2) fail(bat, "a node has exactly two branches");
      for (int s = 0; s < 2; ++s) {
        auto [c, p] = pair_at(bs[s], child(bat, static_cast<std::size_t>(s)));
        n.branches[s] = {c, p};
      }
      n.length = length_at(ns[i], here, rank);
      nodes.push_back(std::move(n));
    }
  }
  std::vector<Mark> marks;
  if (j.contains("marks")) marks = marks_at(j["marks"], "/marks");
  LogCurve x(rank, std::move(comps), std::move(nodes), std::move(marks));
  check(x.validation(), "curve");
  return x;
}

Json divisor_to_json(const Multigraph& g, const GraphDivisor& d) {
  Json j = Json::object();
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (d[v] != 0) j[g.vertex(v).id] = d[v];
  return j;
}

GraphDivisor divisor_from_json(const Multigraph& g, const Json& j) {
  if (!j.is_object()) fail("", "expected an object {vertexId: coefficient}");
  GraphDivisor d(g.num_vertices());
  for (const auto& [id, c] : j.items()) {
    const std::size_t v = g.find_vertex(id);
    if (v == kNoIndex) fail(child("", id), "unknown vertex");
    d[v] = int_at(c, child("", id));
  }
  return d;
}

Json complex_divisor_to_json(const ComplexDivisor& d) {
  Json j = Json::object();
  for (const auto& [v, div] : d) {
    Json terms = Json::object();
    for (const auto& [p, k] : div.terms) terms[p] = terms.value(p, Chips{0}) + k;
    j[v] = terms;
  }
  return j;
}

ComplexDivisor complex_divisor_from_json(const MetrizedComplex& c, const Json& j) {
  if (!j.is_object()) fail("", "expected an object {vertexId: {pointId: multiplicity}}");
  ComplexDivisor d;
  for (const auto& [vid, terms] : j.items()) {
    const std::size_t v = c.graph().find_vertex(vid);
    if (v == kNoIndex) fail(child("", vid), "unknown vertex");
    if (!terms.is_object()) fail(child("", vid), "expected an object {pointId: multiplicity}");
    ComponentDivisor div;
    for (const auto& [p, k] : terms.items()) {
      if (!c.component(v).has_point(p)) fail(child(child("", vid), p), "unknown point");
      div.terms.emplace_back(p, int_at(k, child(child("", vid), p)));
    }
    d[vid] = std::move(div);
  }
  return d;
}

Json class_to_json(const MetrizedComplex& c, const ComplexClass& a) {
  Json j = Json::object();
  for (std::size_t v = 0; v < a.size(); ++v)
    j[c.graph().vertex(v).id] = {{"degree", a[v].degree}, {"torsion", a[v].torsion}};
  return j;
}

ComplexClass class_from_json(const MetrizedComplex& c, const Json& j, const std::string& at) {
  if (!j.is_object()) fail(at, "expected an object {vertexId: {degree, torsion}}");
  ComplexClass a = zero_class(c);
  for (const auto& [vid, cls] : j.items()) {
    const auto here = child(at, vid);
    const std::size_t v = c.graph().find_vertex(vid);
    if (v == kNoIndex) fail(here, "unknown vertex");
    expect_keys(cls, here, {"degree"}, {"torsion"});
    a[v].degree = int_at(cls["degree"], child(here, "degree"));
    if (cls.contains("torsion")) a[v].torsion = ints_at(cls["torsion"], child(here, "torsion"));
    if (!c.component(v).group().contains(a[v].torsion))
      fail(child(here, "torsion"), "not an element of the component group");
  }
  return a;
}

Json bundle_to_json(const LogCurve& x, const LogLineBundle& l) {
  Json g = Json::object();
  for (std::size_t e = 0; e < l.gluing.size(); ++e) g[x.nodes()[e].id] = l.gluing[e];
  return {{"classes", class_to_json(x.complex(), l.classes)}, {"gluing", g}};
}

LogLineBundle bundle_from_json(const LogCurve& x, const Json& j) {
  expect_keys(j, "", {"classes"}, {"gluing"});
  LogLineBundle l = trivial_bundle(x);
  l.classes = class_from_json(x.complex(), j["classes"], "/classes");
  if (j.contains("gluing")) {
    if (!j["gluing"].is_object()) fail("/gluing", "expected an object {nodeId: int}");
    for (const auto& [id, v] : j["gluing"].items()) {
      const std::size_t e = x.complex().graph().find_edge(id);
      if (e == kNoIndex) fail(child("/gluing", id), "unknown node");
      l.gluing[e] = int_at(v, child("/gluing", id));
    }
  }
  return l;
}

Json to_json(const NodeMonoidPresentation& p) {
  return {{"p", p.p.coords()}, {"generators", p.generator_count()}, {"relation", p.relation()}};
}

NodeMonoidPresentation node_presentation_from_json(const Json& j) {
  expect_keys(j, "", {"p"}, {"generators", "relation"});
  auto p = node_presentation(monoid_at(j["p"], "/p"));
  if (j.contains("generators") && natural_at(j["generators"], "/generators") != p.generator_count())
    fail("/generators", "does not match p");
  if (j.contains("relation") && ints_at(j["relation"], "/relation") != p.relation())
    fail("/relation", "does not match p");
  return p;
}

Json to_json(const MonoidHom& h) {
  return {{"source", h.source_rank}, {"target", h.target_rank}, {"matrix", h.matrix}};
}

}  // namespace logpic::io
