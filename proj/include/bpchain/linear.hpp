#pragma once

#include "bpchain/finite_group.hpp"
#include "bpchain/smith.hpp"

#include <optional>
#include <vector>

namespace bpchain {

/// Coordinates of an element of a finitely generated Z_(p)-module in its
/// Smith basis: a residue mod p^{e_i} per torsion summand and an exact
/// coordinate per free summand.
struct ClassCoordinates {
  std::vector<Integer> torsion;
  Vector free;

  bool is_zero() const {
    for (const auto& t : torsion)
      if (sgn(t) != 0) return false;
    return bpchain::is_zero(free);
  }
  friend bool operator==(const ClassCoordinates&, const ClassCoordinates&) = default;
};

inline FinitePGroup group_of(const SmithDecomposition& s) {
  std::vector<int> torsion;
  for (int e : s.exponents)
    if (e > 0) torsion.push_back(e);
  return FinitePGroup(std::move(torsion), s.rows - s.rank);
}

/// Isomorphism type of G / im(A), with the columns of A as relations.
inline FinitePGroup cokernel_structure(const SparseMatrix& a, Prime p,
                                       PivotRule rule = PivotRule::lex_first) {
  return group_of(smith_normal_form(a, p, rule));
}

/// A Z_(p)-basis of ker(A); empty when A is injective.
inline std::vector<Vector> kernel_basis(const SmithDecomposition& s) {
  std::vector<Vector> out;
  for (std::size_t j = s.rank; j < s.cols; ++j) out.push_back(s.right.column(j));
  return out;
}

inline std::vector<Vector> kernel_basis(const SparseMatrix& a, Prime p,
                                        PivotRule rule = PivotRule::lex_first) {
  return kernel_basis(smith_normal_form(a, p, rule));
}

/// Solves A x = v over Z_(p) given the Smith form of A.
inline std::optional<Vector> image_membership(const SmithDecomposition& s, const Vector& v,
                                              Prime p) {
  if (v.size() != s.rows) throw Error("image_membership: dimension mismatch");
  const Vector w = s.left.apply(v);
  Vector y(s.cols);
  for (std::size_t i = 0; i < s.rows; ++i) {
    if (i < s.rank) {
      if (sgn(w[i]) != 0 && valuation(w[i], p) < s.exponents[i]) return std::nullopt;
      y[i] = w[i] / s.diagonal[i];
    } else if (sgn(w[i]) != 0) {
      return std::nullopt;
    }
  }
  return s.right.apply(y);
}

inline std::optional<Vector> image_membership(const SparseMatrix& a, const Vector& v, Prime p,
                                              PivotRule rule = PivotRule::lex_first) {
  if (v.size() != a.rows()) throw Error("image_membership: dimension mismatch");
  return image_membership(smith_normal_form(a, p, rule), v, p);
}

/// G / im(A) together with the data needed to compute in it.
class Cokernel {
 public:
  Cokernel(const SparseMatrix& relations, Prime p, PivotRule rule = PivotRule::lex_first)
      : p_(p), snf_(smith_normal_form(relations, p, rule)) {
    for (std::size_t i = 0; i < snf_.rows; ++i) {
      if (i < snf_.rank) {
        if (snf_.exponents[i] > 0) torsion_.push_back(i);
      } else {
        free_.push_back(i);
      }
    }
  }

  FinitePGroup group() const { return group_of(snf_); }
  std::size_t ambient_rank() const { return snf_.rows; }
  const SmithDecomposition& smith() const { return snf_; }

  /// Exponents of the torsion summands in coordinate order.
  std::vector<int> torsion_exponents() const {
    std::vector<int> out;
    for (std::size_t i : torsion_) out.push_back(snf_.exponents[i]);
    return out;
  }
  std::size_t torsion_summands() const { return torsion_.size(); }
  std::size_t free_summands() const { return free_.size(); }

  ClassCoordinates coordinates(const Vector& v) const {
    if (v.size() != snf_.rows) throw Error("Cokernel::coordinates: dimension mismatch");
    const Vector w = snf_.left.apply(v);
    ClassCoordinates c;
    for (std::size_t i : torsion_) c.torsion.push_back(residue(w[i], p_, snf_.exponents[i]));
    for (std::size_t i : free_) c.free.push_back(w[i]);
    return c;
  }

  bool is_zero(const Vector& v) const { return coordinates(v).is_zero(); }

  /// Ambient vector generating the i-th torsion summand.
  Vector torsion_generator(std::size_t i) const {
    return snf_.left_inverse.column(torsion_.at(i));
  }
  Vector free_generator(std::size_t i) const { return snf_.left_inverse.column(free_.at(i)); }

 private:
  Prime p_;
  SmithDecomposition snf_;
  std::vector<std::size_t> torsion_;
  std::vector<std::size_t> free_;
};

/// ker(B) / im(A) for composable B, A with B * A = 0.
///
/// Cycles are expressed in the kernel basis read off the Smith form of B, and
/// A is rewritten in those coordinates; the homology is the cokernel of that
/// restricted map.
class Subquotient {
 public:
  Subquotient(const SparseMatrix& outgoing, const SparseMatrix& incoming, Prime p,
              PivotRule rule = PivotRule::lex_first)
      : p_(p),
        ambient_(incoming.rows()),
        b_snf_(smith_normal_form(outgoing, p, rule)),
        cokernel_(restrict_incoming(outgoing, incoming), p, rule) {}

  FinitePGroup group() const { return cokernel_.group(); }
  std::size_t ambient_rank() const { return ambient_; }
  std::size_t cycle_rank() const { return ambient_ - b_snf_.rank; }

  std::vector<Vector> cycle_basis() const { return kernel_basis(b_snf_); }

  bool is_cycle(const Vector& z) const {
    const Vector w = b_snf_.right_inverse.apply(check_len(z));
    for (std::size_t i = 0; i < b_snf_.rank; ++i)
      if (sgn(w[i]) != 0) return false;
    return true;
  }

  /// Coordinates of the class of the cycle z.
  ClassCoordinates coordinates(const Vector& z) const {
    const Vector w = b_snf_.right_inverse.apply(check_len(z));
    Vector y(cycle_rank());
    for (std::size_t i = 0; i < b_snf_.rank; ++i)
      if (sgn(w[i]) != 0) throw Error("Subquotient::coordinates: not a cycle");
    for (std::size_t i = b_snf_.rank; i < ambient_; ++i) y[i - b_snf_.rank] = w[i];
    return cokernel_.coordinates(y);
  }

  std::vector<int> torsion_exponents() const { return cokernel_.torsion_exponents(); }
  std::size_t torsion_summands() const { return cokernel_.torsion_summands(); }
  std::size_t free_summands() const { return cokernel_.free_summands(); }

  /// A cycle representing the i-th torsion generator.
  Vector torsion_representative(std::size_t i) const {
    return lift(cokernel_.torsion_generator(i));
  }
  Vector free_representative(std::size_t i) const { return lift(cokernel_.free_generator(i)); }

 private:
  SparseMatrix restrict_incoming(const SparseMatrix& outgoing,
                                 const SparseMatrix& incoming) const {
    if (outgoing.cols() != incoming.rows()) throw Error("Subquotient: shapes do not compose");
    if (!(outgoing * incoming).is_zero())
      throw Error("Subquotient: composite of the two maps is not zero");
    const SparseMatrix w = b_snf_.right_inverse * incoming;
    SparseMatrix x(cycle_rank(), incoming.cols());
    for (std::size_t i = b_snf_.rank; i < ambient_; ++i)
      for (const auto& [c, v] : w.row(i)) x.set(i - b_snf_.rank, c, v);
    return x;
  }

  Vector lift(const Vector& y) const {
    Vector padded(ambient_);
    for (std::size_t i = 0; i < y.size(); ++i) padded[b_snf_.rank + i] = y[i];
    return b_snf_.right.apply(padded);
  }

  const Vector& check_len(const Vector& z) const {
    if (z.size() != ambient_) throw Error("Subquotient: dimension mismatch");
    return z;
  }

  Prime p_;
  std::size_t ambient_;
  SmithDecomposition b_snf_;
  Cokernel cokernel_;
};

/// Submodule of Z_(p)^n spanned by a finite set of generators. The basis is
/// p^{e_i} times the leading columns of the left Smith inverse.
class Span {
 public:
  Span(std::size_t ambient, const std::vector<Vector>& generators, Prime p,
       PivotRule rule = PivotRule::lex_first)
      : p_(p), snf_(smith_normal_form(SparseMatrix::from_columns(generators, ambient), p, rule)) {}

  std::size_t ambient_rank() const { return snf_.rows; }
  std::size_t rank() const { return snf_.rank; }

  /// Coordinates of v in the span basis, or nothing if v is outside.
  std::optional<Vector> coordinates(const Vector& v) const {
    if (v.size() != snf_.rows) throw Error("Span::coordinates: dimension mismatch");
    const Vector w = snf_.left.apply(v);
    Vector y(snf_.rank);
    for (std::size_t i = 0; i < snf_.rows; ++i) {
      if (i < snf_.rank) {
        if (sgn(w[i]) != 0 && valuation(w[i], p_) < snf_.exponents[i]) return std::nullopt;
        y[i] = w[i] / snf_.diagonal[i];
      } else if (sgn(w[i]) != 0) {
        return std::nullopt;
      }
    }
    return y;
  }

  bool contains(const Vector& v) const { return coordinates(v).has_value(); }

  bool contains_all(const std::vector<Vector>& vs) const {
    for (const auto& v : vs)
      if (!contains(v)) return false;
    return true;
  }

  std::vector<Vector> basis() const {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < snf_.rank; ++i) {
      Vector b = snf_.left_inverse.column(i);
      for (auto& x : b) x *= snf_.diagonal[i];
      out.push_back(std::move(b));
    }
    return out;
  }

 private:
  Prime p_;
  SmithDecomposition snf_;
};

/// Isomorphism type of outer / inner, where inner is generated by the given
/// vectors and must lie inside outer.
inline FinitePGroup lattice_quotient(const Span& outer, const std::vector<Vector>& inner, Prime p,
                                     PivotRule rule = PivotRule::lex_first) {
  std::vector<Vector> coords;
  coords.reserve(inner.size());
  for (const auto& v : inner) {
    auto c = outer.coordinates(v);
    if (!c) throw Error("lattice_quotient: inner generator outside the outer lattice");
    coords.push_back(std::move(*c));
  }
  return cokernel_structure(SparseMatrix::from_columns(coords, outer.rank()), p, rule);
}

/// Kernel of the map coker(source_relations) -> coker(target_relations)
/// induced by `map` on the ambient free modules.
struct InducedKernel {
  FinitePGroup group;
  std::vector<Vector> preimage_generators;  // generate map^{-1}(im target_relations)
};

inline InducedKernel induced_kernel(const SparseMatrix& map, const SparseMatrix& source_relations,
                                    const SparseMatrix& target_relations, Prime p,
                                    PivotRule rule = PivotRule::lex_first) {
  const std::size_t n = map.cols();
  if (source_relations.rows() != n || target_relations.rows() != map.rows())
    throw Error("induced_kernel: shape mismatch");
  SparseMatrix neg_target(target_relations.rows(), target_relations.cols());
  for (std::size_t r = 0; r < target_relations.rows(); ++r)
    for (const auto& [c, v] : target_relations.row(r)) neg_target.set(r, c, -v);
  const auto joint = kernel_basis(SparseMatrix::hconcat(map, neg_target), p, rule);

  InducedKernel out;
  for (const auto& k : joint)
    out.preimage_generators.emplace_back(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(n));
  const Span preimage(n, out.preimage_generators, p, rule);
  out.group = lattice_quotient(preimage, source_relations.columns(), p, rule);
  return out;
}

}  // namespace bpchain
