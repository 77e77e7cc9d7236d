#include "logpic/fixtures.hpp"

#include "logpic/errors.hpp"
#include "logpic/graph_zoo.hpp"

namespace logpic {

MetrizedComplex rational_complex(const Multigraph& g) {
  g.require_valid();
  std::map<std::string, ComponentModel> components;
  std::map<std::string, std::string> attach;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (g.vertex(v).weight != 0) throw InputError("rational_complex needs weight-0 vertices");
    std::vector<std::string> points{"p"};
    for (const auto& h : g.half_edges_at(v)) {
      const auto& hid = g.edge(h.edge).halves[h.side].id;
      points.push_back("x." + hid);
      attach[hid] = "x." + hid;
    }
    components[g.vertex(v).id] = ComponentModel::rational(points);
  }
  return MetrizedComplex(g, std::move(components), std::move(attach));
}

namespace fixtures {

MetrizedComplex cpx_c3_rat() { return rational_complex(c3()); }
MetrizedComplex cpx_b2_rat() { return rational_complex(b2()); }

MetrizedComplex cpx_loop_rat() {
  return MetrizedComplex(loop1(), {{"v1", ComponentModel::rational({"x1", "x2", "p"})}},
                         {{"e1a", "x1"}, {"e1b", "x2"}});
}

MetrizedComplex cpx_ell5() {
  return MetrizedComplex(make_graph(1, {}, {1}), {{"v1", ComponentModel::elliptic({5})}}, {});
}

LogCurve x_b2() { return from_complex(cpx_b2_rat()).curve; }
LogCurve x_nodalcubic() { return from_complex(cpx_loop_rat()).curve; }
LogCurve x_ell5() { return from_complex(cpx_ell5()).curve; }
LogCurve x_c3() { return from_complex(cpx_c3_rat()).curve; }
LogCurve x_p2() { return from_complex(rational_complex(p2())).curve; }
LogCurve x_b3() { return from_complex(rational_complex(b3())).curve; }

}  // namespace fixtures

std::vector<NamedGraph> graph_fixtures() {
  using namespace fixtures;
  return {{"K1", k1()}, {"P2", p2()}, {"C3", c3()}, {"B2", b2()}, {"B3", b3()}, {"LOOP1", loop1()}};
}

std::vector<NamedComplex> complex_fixtures() {
  using namespace fixtures;
  return {{"CPX-C3-RAT", cpx_c3_rat()},
          {"CPX-B2-RAT", cpx_b2_rat()},
          {"CPX-LOOP-RAT", cpx_loop_rat()},
          {"CPX-ELL5", cpx_ell5()}};
}

std::vector<NamedCurve> curve_fixtures() {
  using namespace fixtures;
  return {{"X-B2", x_b2()}, {"X-NODALCUBIC", x_nodalcubic()}, {"X-ELL5", x_ell5()},
          {"X-C3", x_c3()}, {"X-P2", x_p2()},                 {"X-B3", x_b3()}};
}

}  // namespace logpic
