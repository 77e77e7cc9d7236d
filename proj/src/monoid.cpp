#include "logpic/monoid.hpp"

#include <sstream>

#include "logpic/errors.hpp"

namespace logpic {

namespace {

std::uint64_t add_u64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw InputError("monoid coordinate overflow");
  return r;
}

std::uint64_t mul_u64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw InputError("monoid coordinate overflow");
  return r;
}

}  // namespace

MonoidElement MonoidElement::unit(std::size_t rank, std::size_t i) {
  std::vector<std::uint64_t> c(rank, 0);
  if (i >= rank) throw InputError("generator index out of range");
  c[i] = 1;
  return MonoidElement(std::move(c));
}

bool MonoidElement::is_zero() const {
  for (auto c : coords_)
    if (c != 0) return false;
  return true;
}

MonoidElement operator+(const MonoidElement& a, const MonoidElement& b) {
  if (a.rank() != b.rank()) throw InputError("monoid rank mismatch in addition");
  std::vector<std::uint64_t> c(a.rank());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = add_u64(a.coords_[i], b.coords_[i]);
  return MonoidElement(std::move(c));
}

std::string MonoidElement::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) out << (i ? "," : "") << coords_[i];
  out << ')';
  return out.str();
}

MonoidHom MonoidHom::zero(std::size_t source, std::size_t target) {
  return MonoidHom{source, target, std::vector<std::vector<std::uint64_t>>(target, std::vector<std::uint64_t>(source, 0))};
}

MonoidHom MonoidHom::from_images(std::size_t target, const std::vector<MonoidElement>& images) {
  MonoidHom h = zero(images.size(), target);
  for (std::size_t j = 0; j < images.size(); ++j) {
    if (images[j].rank() != target) throw InputError("monoid hom image has wrong rank");
    for (std::size_t i = 0; i < target; ++i) h.matrix[i][j] = images[j].coords()[i];
  }
  return h;
}

MonoidElement hom_apply(const MonoidHom& h, const MonoidElement& m) {
  if (m.rank() != h.source_rank) throw InputError("monoid hom applied to element of wrong rank");
  std::vector<std::uint64_t> out(h.target_rank, 0);
  for (std::size_t i = 0; i < h.target_rank; ++i)
    for (std::size_t j = 0; j < h.source_rank; ++j)
      out[i] = add_u64(out[i], mul_u64(h.matrix[i][j], m.coords()[j]));
  return MonoidElement(std::move(out));
}

std::vector<std::int64_t> NodeMonoidPresentation::relation() const {
  std::vector<std::int64_t> row{1, 1};
  for (auto c : p.coords()) row.push_back(-static_cast<std::int64_t>(c));
  return row;
}

std::string NodeMonoidPresentation::describe() const {
  return "N^2 (+)_{diag,N," + p.to_string() + "} N^" + std::to_string(p.rank());
}

NodeMonoidPresentation node_presentation(const MonoidElement& p) {
  if (p.is_zero()) throw InputError("invalid node datum: smoothing parameter p_e must be non-zero");
  return NodeMonoidPresentation{p};
}

bool is_unit(const MonoidElement& p) {
  if (p.rank() != 1)
    throw InputError("semistability is only defined over the standard log point (monoid rank 1)");
  return p.coords()[0] == 1;
}

}  // namespace logpic
