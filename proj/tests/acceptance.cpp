// Acceptance gate: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "logpic/chip_firing.hpp"
#include "logpic/fixtures.hpp"
#include "logpic/graph_zoo.hpp"
#include "logpic/harness.hpp"
#include "logpic/int_matrix.hpp"
#include "logpic/log_curve.hpp"
#include "logpic/metrized_complex.hpp"
#include "oracles.hpp"

using namespace logpic;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail, double seconds) {
  std::printf("criterion %2d %-4s %-34s %s (%.1fs)\n", id, ok ? "PASS" : "FAIL", name.c_str(), detail.c_str(),
              seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string counts(const SweepReport& r) {
  std::string s = std::to_string(r.checked) + " checked, " + std::to_string(r.violations.size()) + " violations";
  if (!r.violations.empty()) s += "; first: " + r.violations.front().instance_label;
  return s;
}

// Exact reduced-Laplacian solve by cofactors: returns the script with x_0 = 0
// when it is integral. Only for n <= 4.
std::optional<std::vector<Chips>> cofactor_script(const Multigraph& g, const GraphDivisor& delta) {
  const std::size_t n = g.num_vertices();
  if (degree(delta) != 0) return std::nullopt;
  const std::size_t k = n - 1;
  if (k == 0) return delta[0] == 0 ? std::optional(std::vector<Chips>{0}) : std::nullopt;
  std::vector<std::vector<Chips>> a(k, std::vector<Chips>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) {
        for (std::size_t w = 0; w < n; ++w)
          if (w != i + 1) a[i][j] += g.edge_count(i + 1, w);
      } else {
        a[i][j] = -g.edge_count(i + 1, j + 1);
      }
    }
  std::function<Chips(const std::vector<std::vector<Chips>>&)> det = [&](const auto& m) -> Chips {
    const std::size_t s = m.size();
    if (s == 1) return m[0][0];
    Chips d = 0;
    for (std::size_t c = 0; c < s; ++c) {
      std::vector<std::vector<Chips>> minor;
      for (std::size_t r = 1; r < s; ++r) {
        std::vector<Chips> row;
        for (std::size_t cc = 0; cc < s; ++cc)
          if (cc != c) row.push_back(m[r][cc]);
        minor.push_back(row);
      }
      d += (c % 2 ? -1 : 1) * m[0][c] * det(minor);
    }
    return d;
  };
  const Chips d = det(a);
  std::vector<Chips> x(n, 0);
  for (std::size_t i = 0; i < k; ++i) {
    auto m = a;
    for (std::size_t r = 0; r < k; ++r) m[r][i] = delta[r + 1];
    const Chips num = det(m);
    if (num % d != 0) return std::nullopt;
    x[i + 1] = num / d;
  }
  if (oracle::laplacian_times(g, x) != delta) return std::nullopt;
  return x;
}

void for_each_box(std::size_t n, Chips lo, Chips hi, const std::function<void(const GraphDivisor&)>& f) {
  GraphDivisor d(std::vector<Chips>(n, lo));
  for (;;) {
    f(d);
    std::size_t i = 0;
    while (i < n && d[i] == hi) d[i++] = lo;
    if (i == n) return;
    ++d[i];
  }
}

// Bounded firing search first; the exact cofactor script settles anything
// the search cannot reach.
bool oracle_equivalent(const Multigraph& g, const GraphDivisor& a, const GraphDivisor& b) {
  const GraphDivisor delta = a - b;
  if (oracle::in_image_bruteforce(g, delta, g.num_vertices() <= 3 ? 4 : 2)) return true;
  return cofactor_script(g, delta).has_value();
}

}  // namespace

int main() {
  const SweepConfig cfg;

  {
    auto t0 = std::chrono::steady_clock::now();
    SweepConfig c1 = cfg;
    c1.max_vertices = 4;
    c1.max_edges = 6;
    const auto r = sweep_rr_graph(c1);
    report(1, "graph Riemann-Roch", r.pass() && r.checked > 0, counts(r), since(t0));
  }

  auto t0 = std::chrono::steady_clock::now();
  const auto curves = standard_curves(cfg);
  const auto battery = run_curve_battery(cfg, curves, true);
  const double battery_time = since(t0);
  report(2, "log-curve Riemann-Roch", battery.rr.pass() && battery.rr.checked > 0,
         std::to_string(curves.size()) + " curves, " + counts(battery.rr), battery_time);
  report(3, "rational rank = graph rank", battery.rational_equality.pass() && battery.rational_equality.checked > 0,
         counts(battery.rational_equality), 0);
  report(4, "specialization r <= r_G", battery.specialization.pass() && battery.specialization.checked > 0,
         counts(battery.specialization), 0);

  {
    t0 = std::chrono::steady_clock::now();
    const std::vector<LabelledCurve> ses_curves{{"X-P2", fixtures::x_p2()},
                                                {"X-B2", fixtures::x_b2()},
                                                {"X-B3", fixtures::x_b3()},
                                                {"X-C3", fixtures::x_c3()},
                                                {"X-NODALCUBIC", fixtures::x_nodalcubic()}};
    const auto r = sweep_ses(cfg, ses_curves);
    report(5, "kernel order m^b1", r.pass() && r.checked == 15, counts(r), since(t0));
  }

  {
    const std::size_t skipped = battery.direct.extra["skippedDirect"].get<std::size_t>();
    report(6, "direct rank = complex rank", battery.direct.pass() && battery.direct.checked > 0,
           counts(battery.direct) + ", " + std::to_string(skipped) + " direct runs over the work cap", 0);
  }

  {
    bool witness = false;
    for (const auto& w : battery.clifford.extra["witnesses"])
      if (w["genus"] == 2 && w["label"].get<std::string>().rfind("rational 2v", 0) == 0) witness = true;
    bool b3 = false;
    const auto b3x = fixtures::x_b3();
    CurveRankEngine engine(b3x);
    for (const auto& cls : classes_of_degree(b3x.complex(), 2))
      if (engine.rank(bundle_from_classes(b3x, cls)) == 1) b3 = true;
    report(7, "Clifford", battery.clifford.pass() && witness && b3,
           counts(battery.clifford) + ", " + std::to_string(battery.clifford.extra["witnesses"].size()) +
               " degree-2 rank-1 witnesses, B3 witness " + (b3 ? "found" : "missing"),
           0);
  }

  {
    t0 = std::chrono::steady_clock::now();
    SweepConfig c8 = cfg;
    c8.instances = 100;
    c8.monoid_rank = 2;
    c8.allow_marks = true;
    c8.seed = 8;
    const auto list = random_curves(c8);
    bool loops = false, parallel = false, marks = false;
    for (const auto& [label, x] : list) {
      const auto& g = x.complex().graph();
      for (std::size_t e = 0; e < g.num_edges(); ++e) {
        loops = loops || g.endpoint(e, 0) == g.endpoint(e, 1);
        for (std::size_t f = e + 1; f < g.num_edges(); ++f)
          parallel = parallel || (g.endpoint(e, 0) != g.endpoint(e, 1) &&
                                  std::minmax(g.endpoint(e, 0), g.endpoint(e, 1)) ==
                                      std::minmax(g.endpoint(f, 0), g.endpoint(f, 1)));
      }
      marks = marks || !x.marks().empty();
    }
    const auto r = sweep_roundtrip(c8, list);
    report(8, "complex/curve roundtrip", r.pass() && r.checked == 100 && loops && parallel && marks,
           counts(r) + ", " + std::to_string(r.extra["automorphismsChecked"].get<std::size_t>()) +
               " automorphisms transported",
           since(t0));
  }

  {
    t0 = std::chrono::steady_clock::now();
    const Multigraph nodal = fixtures::x_nodalcubic().complex().graph();
    const Chips bn_defect = rr_defect(nodal, GraphDivisor(std::vector<Chips>{1}), RankSemantics::BakerNorine);
    SweepConfig c9 = cfg;
    c9.degree_window = std::pair<Chips, Chips>{1, 1};
    const auto flagged = sweep_rr_graph(c9, RankSemantics::BakerNorine, {nodal});
    const auto c = fixtures::cpx_loop_rat();
    const auto cls = class_of(c, {{"v1", {{{"p", 1}}}}});
    const int naive = rank_naive(c, cls);
    const int corrected = rank(c, cls);
    report(9, "negative controls", bn_defect == 1 && !flagged.pass() && naive == 1 && corrected == 0,
           "loop-blind defect " + std::to_string(bn_defect) + ", flagged " +
               std::to_string(flagged.violations.size()) + ", naive rank " + std::to_string(naive) + ", rank " +
               std::to_string(corrected),
           since(t0));
  }

  {
    t0 = std::chrono::steady_clock::now();
    std::size_t checked = 0, bad = 0;
    std::mt19937_64 rng(10);
    for (const auto& g : enumerate_multigraphs(4, 5)) {
      const std::size_t n = g.num_vertices();
      for_each_box(n, -3, 3, [&](const GraphDivisor& d) {
        const auto r = q_reduce(g, d, 0);
        ++checked;
        if (!oracle_equivalent(g, d, r) || !dhar(g, r, 0).empty()) ++bad;
        GraphDivisor other = d;
        const std::size_t a = rng() % n, b = rng() % n;
        other[a] += 1;
        other[b] -= 1;
        ++checked;
        if (is_equivalent(g, d, other) != oracle_equivalent(g, d, other)) ++bad;
      });
    }
    std::size_t snf_bad = 0;
    for (int t = 0; t < 1000; ++t) {
      const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
      IntMatrix m(rows, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(rng() % 21) - 10;
      const auto s = smith_normal_form(m);
      const auto diag = s.diagonal();
      bool ok = s.U * m * s.V == s.S && s.S.is_diagonal() && abs(determinant(s.U)) == 1 &&
                abs(determinant(s.V)) == 1;
      for (std::size_t i = 0; ok && i < diag.size(); ++i) {
        ok = diag[i] >= 0;
        if (ok && i + 1 < diag.size() && diag[i] != 0) ok = diag[i + 1] % diag[i] == 0;
        if (ok && i + 1 < diag.size() && diag[i] == 0) ok = diag[i + 1] == 0;
      }
      if (!ok) ++snf_bad;
    }
    report(10, "oracle equivalence", bad == 0 && snf_bad == 0,
           std::to_string(checked) + " divisor checks, " + std::to_string(bad) + " disagreements; 1000 SNF, " +
               std::to_string(snf_bad) + " bad",
           since(t0));
  }

  std::printf("%s\n", failures == 0 ? "all criteria pass" : "some criteria FAILED");
  return failures == 0 ? 0 : 1;
}
