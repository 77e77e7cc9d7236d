#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "logpic/chip_firing.hpp"
#include "logpic/io.hpp"
#include "logpic/log_curve.hpp"
#include "logpic/metrized_complex.hpp"

namespace logpic {

struct SweepConfig {
  std::uint64_t seed = 1;
  std::size_t max_vertices = 3;
  std::size_t max_edges = 4;
  Chips max_group_order = 5;
  /// Degree window; default [-2, 2g + 2] per instance.
  std::optional<std::pair<Chips, Chips>> degree_window;
  std::size_t instances = 200;
  /// Rank of the length monoid for generated curves (lengths random when > 1).
  std::size_t monoid_rank = 1;
  bool allow_genus_one = true;
  bool allow_marks = false;
  /// Torus orders checked by sweep_ses and used by the direct rank.
  std::vector<Chips> torus_orders{1, 2, 3};
  /// Per-call work cap for comb_rank_direct.
  std::size_t direct_work_cap = 20000;

  io::Json to_json() const;
  /// Throws InputError unless lo <= hi and bounds are positive.
  void validate() const;
};

struct Violation {
  std::string identity;
  std::string instance_label;
  io::Json instance;
  io::Json detail;
  /// Ordering key for picking the minimal counterexample.
  std::pair<std::size_t, Chips> size;
};

struct SweepReport {
  std::size_t checked = 0;
  std::vector<Violation> violations;
  io::Json config;
  /// Extra sweep-specific output (witnesses, skipped counts).
  io::Json extra = io::Json::object();

  bool pass() const { return violations.empty(); }
  io::Json to_json() const;
};

/// Deterministic across platforms: raw mt19937_64 output reduced by modulo.
class SweepRng {
 public:
  explicit SweepRng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  Chips between(Chips lo, Chips hi) { return lo + static_cast<Chips>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool coin(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

 private:
  std::mt19937_64 engine_;
};

/// Connected, loops and parallel edges with positive probability, weights 0.
Multigraph gen_graph(const SweepConfig& cfg, SweepRng& rng);
MetrizedComplex gen_complex(const SweepConfig& cfg, SweepRng& rng);
LogCurve gen_curve(const SweepConfig& cfg, SweepRng& rng);

Multigraph gen_graph(const SweepConfig& cfg);
MetrizedComplex gen_complex(const SweepConfig& cfg);
LogCurve gen_curve(const SweepConfig& cfg);

struct LabelledCurve {
  std::string label;
  LogCurve curve;
};

/// All-rational curves over every graph with <= max_vertices, <= max_edges.
std::vector<LabelledCurve> rational_curves(std::size_t max_vertices, std::size_t max_edges);
/// cfg.instances random mixed curves.
std::vector<LabelledCurve> random_curves(const SweepConfig& cfg);
/// Rational curves up to 3 vertices / 5 edges, the three genus-1 fixtures and
/// cfg.instances random curves.
std::vector<LabelledCurve> standard_curves(const SweepConfig& cfg);

/// One representative per class of Pic^d: q-reduced multidegree times torsion.
std::vector<ComplexClass> classes_of_degree(const MetrizedComplex& c, Chips d);

/// Degree-window sweep of graph Riemann-Roch. With `graphs` empty, every
/// connected multigraph within the bounds is used. Each divisor with
/// coefficients in [-3, deg + 3] is checked.
SweepReport sweep_rr_graph(const SweepConfig& cfg, RankSemantics semantics = RankSemantics::LoopCorrected,
                           const std::vector<Multigraph>& graphs = {});

/// Every identity of the curve battery for a list of curves.
struct BatteryReports {
  SweepReport rr;
  SweepReport rational_equality;
  SweepReport specialization;
  SweepReport clifford;
  SweepReport direct;
};

BatteryReports run_curve_battery(const SweepConfig& cfg, const std::vector<LabelledCurve>& curves, bool direct = true);

SweepReport sweep_rr_complex(const SweepConfig& cfg, const std::vector<MetrizedComplex>& complexes = {});
SweepReport sweep_rr_curve(const SweepConfig& cfg, const std::vector<LabelledCurve>& curves = {});
SweepReport sweep_specialization(const SweepConfig& cfg, const std::vector<LabelledCurve>& curves = {});
SweepReport sweep_clifford(const SweepConfig& cfg, const std::vector<LabelledCurve>& curves = {});
SweepReport sweep_ses(const SweepConfig& cfg, const std::vector<LabelledCurve>& curves = {});
SweepReport sweep_roundtrip(const SweepConfig& cfg, const std::vector<LabelledCurve>& curves = {});

}  // namespace logpic
