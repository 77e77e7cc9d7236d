#pragma once

// Definition-level references for complexes: bounded firing-script search for
// effectivity and the test-class enumeration for rank.

#include <functional>

#include "logpic/metrized_complex.hpp"
#include "oracles.hpp"

namespace oracle {

using logpic::ComplexClass;
using logpic::MetrizedComplex;

/// Some a + sum x_u F_u (x_0 = 0, |x_u| <= bound) is componentwise effective.
inline bool complex_effective_bruteforce(const MetrizedComplex& c, const ComplexClass& a, Chips bound) {
  const auto firing = logpic::firing_vectors(c);
  const std::size_t n = a.size();
  std::vector<Chips> x(n, 0);
  for (std::size_t i = 1; i < n; ++i) x[i] = -bound;
  for (;;) {
    ComplexClass b = a;
    for (std::size_t u = 0; u < n; ++u) b = logpic::add(c, b, logpic::scale(c, firing[u], x[u]));
    bool eff = true;
    for (std::size_t v = 0; v < n && eff; ++v) eff = logpic::is_effective_class(c.component(v), b[v]);
    if (eff) return true;
    std::size_t i = 1;
    while (i < n && x[i] == bound) x[i++] = -bound;
    if (i >= n) return false;
    ++x[i];
  }
}

/// Every effective test class of degree k: multidegree m >= 0 summing to k,
/// torsion free where m_v >= 1 and zero where m_v = 0.
inline void for_each_test_class(const MetrizedComplex& c, Chips k, const std::function<void(const ComplexClass&)>& f) {
  const std::size_t n = c.graph().num_vertices();
  for_each_composition(n, k, [&](const std::vector<Chips>& m) {
    ComplexClass e = logpic::zero_class(c);
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
      if (v == n) {
        f(e);
        return;
      }
      e[v].degree = m[v];
      if (m[v] == 0) {
        e[v].torsion = c.component(v).group().zero();
        rec(v + 1);
        return;
      }
      for (const auto& t : c.component(v).group().elements()) {
        e[v].torsion = t;
        rec(v + 1);
      }
    };
    rec(0);
  });
}

/// Rank by enumerating test classes on the given complex (no subdivision).
inline int complex_rank_enumerated(const MetrizedComplex& c, const ComplexClass& a,
                                   const std::function<bool(const ComplexClass&)>& effective) {
  if (!effective(a)) return -1;
  for (Chips k = 1;; ++k) {
    bool all = true;
    for_each_test_class(c, k, [&](const ComplexClass& e) {
      if (all && !effective(logpic::sub(c, a, e))) all = false;
    });
    if (!all) return static_cast<int>(k - 1);
  }
}

}  // namespace oracle
