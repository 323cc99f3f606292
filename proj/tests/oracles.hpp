#pragma once

// Reference computations written directly from the defining formulas,
// sharing no code paths with the library beyond its data types.

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "groupoidal/bundle_action.hpp"
#include "groupoidal/fell_bundle.hpp"
#include "groupoidal/star_algebra.hpp"

namespace oracles {

using namespace groupoidal;

struct Wedderburn {
  Eigen::Index dimension = 0;
  Eigen::Index center = 0;
  std::vector<int> blocks;
};

/// Left multiplication matrices of the basis, column j of l[i] holding e_i e_j.
using Structure = std::vector<Matrix>;

inline Structure structure(const StarAlgebra& a)
{
  Structure l;
  for (Eigen::Index i = 0; i < a.dim(); ++i)
    l.emplace_back(a.left(i));
  return l;
}

/// Center as the kernel of a ↦ (e_i a − a e_i)_i, its minimal idempotents
/// from the eigenvectors of a generic central multiplication, and block
/// sizes as square roots of rank(L_e).
inline Wedderburn wedderburn(const Structure& l, unsigned seed = 7)
{
  const auto n = static_cast<Eigen::Index>(l.size());
  // (e_i a)_c = Σ_k a_k L_i(c, k); (a e_i)_c = Σ_k a_k L_k(c, i)
  Matrix comm(n * n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k)
      comm.block(i * n, k, n, 1) = l[i].col(k) - l[k].col(i);
  Eigen::FullPivLU<Matrix> lu(comm);
  lu.setThreshold(1e-10);
  const Matrix z = lu.kernel();
  Wedderburn w;
  w.dimension = n;
  w.center = lu.dimensionOfKernel();
  const Eigen::Index k = w.center;

  std::mt19937 gen(seed);
  std::normal_distribution<double> nd;
  Vector coeff(k);
  for (Eigen::Index i = 0; i < k; ++i)
    coeff(i) = Complex(nd(gen), nd(gen));
  const Vector c = z * coeff;
  Matrix lc = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    lc += c(i) * l[i];
  const Matrix zp = z.completeOrthogonalDecomposition().pseudoInverse();
  Eigen::ComplexEigenSolver<Matrix> es(Matrix(zp * lc * z));
  for (Eigen::Index j = 0; j < k; ++j) {
    const Vector e = z * es.eigenvectors().col(j);
    Matrix le = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      le += e(i) * l[i];
    Eigen::FullPivLU<Matrix> r(le / le.norm());
    r.setThreshold(1e-8);
    w.blocks.push_back(static_cast<int>(std::lround(std::sqrt(static_cast<double>(r.rank())))));
  }
  std::sort(w.blocks.begin(), w.blocks.end());
  return w;
}

inline Wedderburn wedderburn(const StarAlgebra& a, unsigned seed = 7) { return wedderburn(structure(a), seed); }

/// K ⋊ G with basis (i, s) at i*|G| + s: (e_i, s)(e_j, t) = (e_i β_s(e_j), st),
/// for a left action β given by matrices on K.
inline Structure crossed(const Structure& k, const std::vector<Matrix>& beta, const FiniteGroup& g)
{
  const auto n = static_cast<Eigen::Index>(k.size());
  const auto ng = static_cast<Eigen::Index>(g.order());
  Structure out;
  for (Eigen::Index i = 0; i < n; ++i)
    for (ElementIndex s = 0; s < ng; ++s) {
      Matrix m = Matrix::Zero(n * ng, n * ng);
      for (Eigen::Index j = 0; j < n; ++j)
        for (ElementIndex t = 0; t < ng; ++t) {
          const Vector prod = k[i] * beta[s].col(j);
          for (Eigen::Index c = 0; c < n; ++c)
            m(c * ng + g.mul(s, t), j * ng + t) += prod(c);
        }
      out.push_back(std::move(m));
    }
  return out;
}

/// Functions f: X → B subject to f(π_a(x)) = φ_a f(x) for every constraint
/// a, with pointwise product, crossed by the left action
/// (β_t f)(x) = ψ_t f(μ_t(x)). Points are stored point-major in B^X.
struct FunctionAlgebra {
  const StarAlgebra* b = nullptr;
  int points = 0;
  std::vector<std::vector<int>> constraint_perm;
  std::vector<Matrix> constraint_map;
  FiniteGroup group;
  std::vector<std::vector<int>> action_perm;
  std::vector<Matrix> action_map;

  Structure crossed_product() const
  {
    const Eigen::Index d = b->dim();
    const Eigen::Index n = points * d;
    Matrix rows = Matrix::Zero(static_cast<Eigen::Index>(constraint_perm.size()) * n, n);
    for (std::size_t a = 0; a < constraint_perm.size(); ++a)
      for (int x = 0; x < points; ++x) {
        const Eigen::Index r = static_cast<Eigen::Index>(a) * n;
        rows.block(r + constraint_perm[a][x] * d, constraint_perm[a][x] * d, d, d) += Matrix::Identity(d, d);
        rows.block(r + constraint_perm[a][x] * d, x * d, d, d) -= constraint_map[a];
      }
    Matrix basis;
    if (constraint_perm.empty()) {
      basis = Matrix::Identity(n, n);
    } else {
      Eigen::FullPivLU<Matrix> lu(rows);
      lu.setThreshold(1e-10);
      basis = lu.kernel();
    }
    const Matrix proj = basis.completeOrthogonalDecomposition().pseudoInverse();
    const Eigen::Index k = basis.cols();

    Structure alg;
    for (Eigen::Index i = 0; i < k; ++i) {
      Matrix m(k, k);
      for (Eigen::Index j = 0; j < k; ++j) {
        Vector prod(n);
        for (int x = 0; x < points; ++x)
          prod.segment(x * d, d) = b->multiply(basis.col(i).segment(x * d, d), basis.col(j).segment(x * d, d));
        m.col(j) = proj * prod;
      }
      alg.push_back(std::move(m));
    }
    std::vector<Matrix> beta;
    for (std::size_t t = 0; t < action_perm.size(); ++t) {
      Matrix full = Matrix::Zero(n, n);
      for (int x = 0; x < points; ++x)
        full.block(x * d, action_perm[t][x] * d, d, d) = action_map[t];
      beta.push_back(proj * full * basis);
    }
    return crossed(alg, beta, group);
  }
};

/// (f∗g)(x, u) = Σ_{r(y)=r(x)} f(y, y⁻¹x·u) g(y⁻¹x, u) on B∗Ω, with
/// sections stored fiberwise in the order of `pairs`.
inline Vector transformation_convolution(const FellBundle& b, const SpaceAction& act,
                                         const std::vector<std::pair<ArrowIndex, PointIndex>>& pairs,
                                         const Vector& f, const Vector& g)
{
  const auto& y = b.base();
  std::vector<Eigen::Index> off{0};
  for (const auto& [x, u] : pairs)
    off.push_back(off.back() + b.dim(x));
  auto find = [&](ArrowIndex x, PointIndex u) {
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (pairs[i].first == x && pairs[i].second == u)
        return static_cast<Eigen::Index>(i);
    return Eigen::Index{-1};
  };
  Vector out = Vector::Zero(off.back());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [x, u] = pairs[i];
    for (ArrowIndex a = 0; a < static_cast<ArrowIndex>(y.num_arrows()); ++a) {
      if (y.rng(a) != y.rng(x))
        continue;
      const ArrowIndex rest = y.compose(y.inv(a), x);
      const PointIndex v = act.act(rest, u);
      const Eigen::Index fi = find(a, v), gi = find(rest, u);
      const Vector fa = f.segment(off[fi], b.dim(a));
      const Vector gb = g.segment(off[gi], b.dim(rest));
      out.segment(off[i], b.dim(x)) += b.mult(a, rest) * kron(fa, gb);
    }
  }
  return out;
}

/// (f∗f′)(x, s) = Σ_{y, t} f(y, t) · t·f′(t⁻¹·(y⁻¹x), t⁻¹s) on A ⋊ G, with
/// the pair (x, s) stored at position x*|G| + s and fibers A(x).
inline Vector semidirect_convolution(const BundleAction& act, const Vector& f, const Vector& fp)
{
  const auto& b = act.bundle();
  const auto& x = b.base();
  const auto& g = act.group();
  const auto ng = static_cast<ElementIndex>(g.order());
  std::vector<Eigen::Index> off{0};
  for (ArrowIndex a = 0; a < static_cast<ArrowIndex>(x.num_arrows()); ++a)
    for (ElementIndex s = 0; s < ng; ++s)
      off.push_back(off.back() + b.dim(a));
  auto pos = [&](ArrowIndex a, ElementIndex s) { return off[static_cast<std::size_t>(a) * ng + s]; };
  Vector out = Vector::Zero(off.back());
  for (ArrowIndex a = 0; a < static_cast<ArrowIndex>(x.num_arrows()); ++a)
    for (ElementIndex s = 0; s < ng; ++s)
      for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(x.num_arrows()); ++y) {
        if (x.rng(y) != x.rng(a))
          continue;
        const ArrowIndex yx = x.compose(x.inv(y), a);
        for (ElementIndex t = 0; t < ng; ++t) {
          const ElementIndex ti = g.inv(t);
          const ArrowIndex z = act.base_action().act(ti, yx);
          const ElementIndex rest = g.mul(ti, s);
          const Vector moved = act.map(t, z) * fp.segment(pos(z, rest), b.dim(z));
          out.segment(pos(a, s), b.dim(a)) += b.mult(y, yx) * kron(Vector(f.segment(pos(y, t), b.dim(y))), moved);
        }
      }
  return out;
}

inline AlgebraAction trivial_on(const FiniteGroup& g, const StarAlgebra& b)
{
  return {g, b, Side::left, std::vector<Matrix>(g.order(), Matrix::Identity(b.dim(), b.dim()))};
}

inline std::vector<std::vector<int>> perms(const SpaceAction& a)
{
  std::vector<std::vector<int>> out;
  const auto& g = a.groupoid();
  for (ArrowIndex t = 0; t < static_cast<ArrowIndex>(g.num_arrows()); ++t) {
    std::vector<int> p;
    for (PointIndex x = 0; x < static_cast<PointIndex>(a.num_points()); ++x)
      p.push_back(a.act(t, x));
    out.push_back(std::move(p));
  }
  return out;
}

// Ind_H ⋊ G and Ind_G ⋊ H from the defining constraints.
inline std::pair<Wedderburn, Wedderburn> raeburn(const StarAlgebra& b, const SpaceAction& g_on_x,
                                                const SpaceAction& h_on_x,
                                                                   const AlgebraAction& sigma,
                                                                   const AlgebraAction& tau)
{
  const FiniteGroup g(g_on_x.groupoid()), h(h_on_x.groupoid());
  const auto gp = perms(g_on_x), hp = perms(h_on_x);
  const int n = static_cast<int>(g_on_x.num_points());

  FunctionAlgebra p{&b, n, hp, {}, g, {}, {}};
  for (ElementIndex s = 0; s < static_cast<ElementIndex>(h.order()); ++s)
    p.constraint_map.push_back(tau.maps[h.inv(s)]);
  for (ElementIndex t = 0; t < static_cast<ElementIndex>(g.order()); ++t) {
    p.action_perm.push_back(gp[g.inv(t)]);
    p.action_map.push_back(sigma.maps[t]);
  }
  FunctionAlgebra q{&b, n, gp, sigma.maps, h, hp, tau.maps};
  return {wedderburn(p.crossed_product()), wedderburn(q.crossed_product())};
}

// C*(B ∗ G) ⋊ G for the line bundle over G, with basis (x, u) at x*|G| + u.
inline Structure coaction(const FiniteGroup& g)
{
  const auto n = static_cast<ElementIndex>(g.order());
  Structure base;
  std::vector<Matrix> alpha(n, Matrix::Zero(n * n, n * n));
  for (ElementIndex x = 0; x < n; ++x)
    for (ElementIndex v = 0; v < n; ++v) {
      Matrix m = Matrix::Zero(n * n, n * n);
      for (ElementIndex y = 0; y < n; ++y)
        for (ElementIndex u = 0; u < n; ++u)
          if (v == g.mul(y, u))
            m(g.mul(x, y) * n + u, y * n + u) = 1.0;
      base.push_back(std::move(m));
      for (ElementIndex t = 0; t < n; ++t)
        alpha[t](x * n + g.mul(v, g.inv(t)), x * n + v) = 1.0;
    }
  return crossed(base, alpha, g);
}

inline Structure group_algebra(const FiniteGroup& g)
{
  const auto n = static_cast<ElementIndex>(g.order());
  Structure l;
  for (ElementIndex s = 0; s < n; ++s) {
    Matrix m = Matrix::Zero(n, n);
    for (ElementIndex t = 0; t < n; ++t)
      m(g.mul(s, t), t) = 1.0;
    l.push_back(std::move(m));
  }
  return l;
}

} // namespace oracles
