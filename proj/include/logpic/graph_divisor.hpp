#pragma once

#include <cstddef>
#include <vector>

#include "logpic/checked.hpp"

namespace logpic {

/// Integer chip count per vertex, indexed by the owning graph's vertex order.
class GraphDivisor {
 public:
  GraphDivisor() = default;
  explicit GraphDivisor(std::size_t n) : coeffs_(n, 0) {}
  explicit GraphDivisor(std::vector<Chips> coeffs) : coeffs_(std::move(coeffs)) {}

  std::size_t size() const { return coeffs_.size(); }
  Chips& operator[](std::size_t v) { return coeffs_[v]; }
  Chips operator[](std::size_t v) const { return coeffs_[v]; }
  const std::vector<Chips>& coeffs() const { return coeffs_; }

  bool is_effective() const;

  GraphDivisor& operator+=(const GraphDivisor& o);
  GraphDivisor& operator-=(const GraphDivisor& o);
  friend GraphDivisor operator+(GraphDivisor a, const GraphDivisor& b) { return a += b; }
  friend GraphDivisor operator-(GraphDivisor a, const GraphDivisor& b) { return a -= b; }
  friend GraphDivisor operator-(const GraphDivisor& a);

  friend auto operator<=>(const GraphDivisor&, const GraphDivisor&) = default;

 private:
  std::vector<Chips> coeffs_;
};

Chips degree(const GraphDivisor& d);

}  // namespace logpic
