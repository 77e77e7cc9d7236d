#pragma once

#include <string>
#include <vector>

#include "logpic/log_curve.hpp"
#include "logpic/metrized_complex.hpp"
#include "logpic/multigraph.hpp"

namespace logpic {

/// Rational component on every vertex. The roster of v holds "x.<half-edge>"
/// for each half-edge at v (its attachment point) and one free point "p".
/// Vertex weights must be 0.
MetrizedComplex rational_complex(const Multigraph& g);

namespace fixtures {
MetrizedComplex cpx_c3_rat();
MetrizedComplex cpx_b2_rat();
/// One rational vertex with a loop attached at x1, x2; free point p.
MetrizedComplex cpx_loop_rat();
/// One genus-1 vertex with group Z/5, points p0..p4 (p_i has class i), no edges.
MetrizedComplex cpx_ell5();

LogCurve x_b2();
LogCurve x_nodalcubic();
/// cpx_ell5 as a smooth curve.
LogCurve x_ell5();
LogCurve x_c3();
LogCurve x_p2();
LogCurve x_b3();
}  // namespace fixtures

/// Named fixtures as emitted by the CLI: file stem and object.
struct NamedGraph {
  std::string name;
  Multigraph graph;
};
struct NamedComplex {
  std::string name;
  MetrizedComplex complex;
};
struct NamedCurve {
  std::string name;
  LogCurve curve;
};
std::vector<NamedGraph> graph_fixtures();
std::vector<NamedComplex> complex_fixtures();
std::vector<NamedCurve> curve_fixtures();

}  // namespace logpic
