#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace logpic {

/// Element of the free sharp monoid N^k.
class MonoidElement {
 public:
  MonoidElement() = default;
  explicit MonoidElement(std::vector<std::uint64_t> coords) : coords_(std::move(coords)) {}
  static MonoidElement zero(std::size_t rank) { return MonoidElement(std::vector<std::uint64_t>(rank, 0)); }
  static MonoidElement unit(std::size_t rank, std::size_t i);

  std::size_t rank() const { return coords_.size(); }
  const std::vector<std::uint64_t>& coords() const { return coords_; }
  bool is_zero() const;

  friend MonoidElement operator+(const MonoidElement& a, const MonoidElement& b);
  friend auto operator<=>(const MonoidElement&, const MonoidElement&) = default;

  std::string to_string() const;

 private:
  std::vector<std::uint64_t> coords_;
};

/// The monoid itself; only the free case N^k is modelled.
struct SharpMonoid {
  std::size_t rank = 1;
  bool contains(const MonoidElement& m) const { return m.rank() == rank; }
};

/// Monoid homomorphism N^source -> N^target given by a target x source matrix
/// of non-negative integers.
struct MonoidHom {
  std::size_t source_rank = 0;
  std::size_t target_rank = 0;
  std::vector<std::vector<std::uint64_t>> matrix;  // [target][source]

  static MonoidHom zero(std::size_t source, std::size_t target);
  /// Column i is the image of the i-th generator.
  static MonoidHom from_images(std::size_t target, const std::vector<MonoidElement>& images);

  friend bool operator==(const MonoidHom&, const MonoidHom&) = default;
};

MonoidElement hom_apply(const MonoidHom& h, const MonoidElement& m);

/// Characteristic monoid at a node: N^2 (+)_N P, amalgamated along the
/// diagonal N -> N^2 and N -> P, 1 |-> p.
struct NodeMonoidPresentation {
  MonoidElement p;

  /// Generators: the two branch parameters x, y and the basis of P.
  std::size_t generator_count() const { return 2 + p.rank(); }
  /// The single relation x + y = p, as an integer row over the generators
  /// (x, y, e_1..e_k): (1, 1, -p_1, ..., -p_k).
  std::vector<std::int64_t> relation() const;
  std::string describe() const;

  friend bool operator==(const NodeMonoidPresentation&, const NodeMonoidPresentation&) = default;
};

/// Throws InputError if p == 0 (a node needs a non-trivial smoothing parameter).
NodeMonoidPresentation node_presentation(const MonoidElement& p);

/// True iff p is the generator of N. Throws InputError unless rank == 1.
bool is_unit(const MonoidElement& p);

}  // namespace logpic
