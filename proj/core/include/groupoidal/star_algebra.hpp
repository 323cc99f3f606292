#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "groupoidal/action.hpp"
#include "groupoidal/linalg.hpp"
#include "groupoidal/report.hpp"

namespace groupoidal {

/// A finite-dimensional complex *-algebra given by structure constants.
///
/// `left(i)` is the matrix of b ↦ e_i b in the basis, so column j holds the
/// coordinates of e_i e_j. The involution is antilinear: a* = star() · conj(a).
class StarAlgebra {
public:
  StarAlgebra() = default;
  StarAlgebra(std::vector<SparseMatrix> left, Matrix star, std::vector<std::string> basis_names = {},
              std::string provenance = {});

  Eigen::Index dim() const { return static_cast<Eigen::Index>(left_.size()); }
  const SparseMatrix& left(Eigen::Index i) const { return left_[static_cast<std::size_t>(i)]; }
  const Matrix& star() const { return star_; }
  const std::string& basis_name(Eigen::Index i) const { return names_[static_cast<std::size_t>(i)]; }
  const std::vector<std::string>& basis_names() const { return names_; }
  const std::string& provenance() const { return provenance_; }

  Vector multiply(const Vector& a, const Vector& b) const;
  Vector adjoint(const Vector& a) const { return star_ * a.conjugate(); }
  /// Left-multiplication matrix of a general element.
  Matrix left_matrix(const Vector& a) const;
  Vector basis(Eigen::Index i) const { return Vector::Unit(dim(), i); }

  StarAlgebra with_star(Matrix star) const;

private:
  std::vector<SparseMatrix> left_;
  Matrix star_;
  std::vector<std::string> names_;
  std::string provenance_;
};

/// Associativity, antilinear involution and (ab)* = b*a*. Exhaustive on
/// basis triples up to dimension `exhaustive_limit`, seeded random
/// triples above it.
ValidationReport validate_star_algebra(const StarAlgebra& a, double tol = kDefaultTolerance,
                                       std::uint64_t seed = 0, Eigen::Index exhaustive_limit = 48);

/// Left regular representation made unitary by the trace form
/// ⟨f, g⟩ = Tr(L_{f* g}). `image(a)` is R L_a R⁻¹ with Gram = R* R.
class Representation {
public:
  Representation() = default;

  Eigen::Index size() const { return size_; }
  bool faithful() const { return faithful_; }
  double min_gram_eigenvalue() const { return min_gram_eig_; }
  const ValidationReport& report() const { return report_; }

  Matrix image(const Vector& a) const;
  Matrix basis_image(Eigen::Index i) const;
  /// Operator norm ‖π(a)‖, the C*-norm when faithful.
  double norm(const Vector& a) const;

private:
  friend Representation regular_representation(const StarAlgebra&, double, std::uint64_t);
  StarAlgebra algebra_;
  Matrix r_, r_inv_;
  Eigen::Index size_ = 0;
  bool faithful_ = false;
  double min_gram_eig_ = 0.0;
  ValidationReport report_;
};

/// Non-faithful (degenerate trace form) representations are flagged, not
/// thrown. Multiplicativity and *-preservation are checked on basis
/// elements and seeded random products.
Representation regular_representation(const StarAlgebra& a, double tol = kDefaultTolerance,
                                      std::uint64_t seed = 0);

enum class SplitStatus { ok, indeterminate, not_semisimple };

std::string to_string(SplitStatus s);

struct StarStructureReport {
  Eigen::Index dimension = 0;
  Eigen::Index radical_dimension = 0;
  Eigen::Index center_dimension = 0;
  std::vector<int> blocks;  ///< ascending
  bool faithful = false;
  bool is_cstar = false;
  SplitStatus status = SplitStatus::ok;
  std::uint64_t seed = 0;
  int attempts = 0;
  double min_gram_eigenvalue = 0.0;
  std::vector<double> generator_norms;
  std::vector<std::string> notes;

  std::string to_string() const;
};

/// Thresholds of the numerical splitting of the center.
struct SplitParameters {
  /// Smallest accepted gap between clusters, relative to max(1, |spectrum|).
  double min_relative_gap = 1e-6;
  /// Largest accepted spread inside a cluster, relative to that gap.
  double max_spread_ratio = 1e-3;
  int max_attempts = 8;
  /// Generator norms are reported for the first this-many basis elements.
  Eigen::Index max_norms = 32;
};

StarStructureReport star_structure_report(const StarAlgebra& a, double tol = kDefaultTolerance,
                                          std::uint64_t seed = 0, const SplitParameters& params = {});

/// The multiplicative identity, if the algebra has one.
std::optional<Vector> unit_element(const StarAlgebra& a, double tol = kDefaultTolerance);

/// Orthonormal basis of the center as columns.
Matrix center_basis(const StarAlgebra& a, double tol = kDefaultTolerance);
/// Dimension of the kernel of the trace form (a, b) ↦ Tr L_{ab}.
Eigen::Index radical_dimension(const StarAlgebra& a, double tol = kDefaultTolerance);

/// Checks that `phi` (columns = images of basis elements of `a`) is a
/// *-homomorphism a → b, and bijective if `require_bijective`.
ValidationReport check_algebra_homomorphism(const StarAlgebra& a, const StarAlgebra& b, const Matrix& phi,
                                            bool require_bijective, double tol = kDefaultTolerance);

/// A group acting by *-automorphisms: `maps[t]` is the matrix of a ↦ t·a
/// (left) or a ↦ a·t (right).
struct AlgebraAction {
  FiniteGroup group;
  StarAlgebra algebra;
  Side side = Side::left;
  std::vector<Matrix> maps;
};

/// Automorphism, group-law and identity checks.
ValidationReport check_algebra_action(const AlgebraAction& a, double tol = kDefaultTolerance);

/// A ⋊ G with basis (a, s) at index a*|G| + s: (e_a, s)(e_b, t) = (e_a α_s(e_b), st),
/// (e_a, s)* = (α_{s⁻¹}(e_a*), s⁻¹).
StarAlgebra crossed_product_by_action(const AlgebraAction& a);
/// H ⋉ A with basis (s, a) at index s*dim + a: (s, f)(t, g) = (st, (f·t) g),
/// (s, f)* = (s⁻¹, f*·s⁻¹).
StarAlgebra crossed_product_by_right_action(const AlgebraAction& a);

/// M_n with basis E_ij at i*n + j.
StarAlgebra matrix_algebra(int n);
/// ℂⁿ with pointwise operations.
StarAlgebra diagonal_algebra(int n);
/// ℂ[G] with δ_s δ_t = δ_st and δ_s* = δ_{s⁻¹}.
StarAlgebra group_algebra(const FiniteGroup& g);
/// ℂ[ε]/ε² with ε* = ε; not semisimple.
StarAlgebra dual_numbers();
/// Block-diagonal direct sum.
StarAlgebra direct_sum(const StarAlgebra& a, const StarAlgebra& b);

} // namespace groupoidal
