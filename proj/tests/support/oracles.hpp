#pragma once

// Independent reference implementations and random instance generators used by
// the unit tests and the acceptance binary. Nothing here calls the library's
// decision procedures; only its data types are shared.

#include "aqft/category.hpp"
#include "aqft/homalg.hpp"
#include "aqft/operad.hpp"
#include "aqft/ortho.hpp"

#include <set>
#include <utility>
#include <vector>

namespace oracle {

using aqft::Rational;
using aqft::Rng;
using Dense = std::vector<std::vector<Rational>>;

// ---------------------------------------------------------------------------
// Random categories

/// A concrete category whose objects are small finite sets and whose morphisms
/// are functions between them, closed under composition. Returns nullptr when
/// the attempt exceeded the bounds (callers retry).
aqft::EnumeratedPtr random_category(Rng& rng, std::size_t max_objects = 6, std::size_t max_morphisms = 8);

/// Like random_category but retries until it succeeds.
aqft::EnumeratedPtr some_category(Rng& rng, std::size_t max_objects = 6, std::size_t max_morphisms = 8);

/// Random seed pairs with a common target (possibly none).
std::set<aqft::OrthoRel::Pair> random_seed(const aqft::EnumeratedCategory& cat, Rng& rng, std::size_t max_pairs = 3);

/// Full subcategory on a random nonempty set of objects, with its inclusion.
struct Subcategory {
  aqft::EnumeratedPtr sub;
  aqft::Functor inclusion;
};
Subcategory random_full_subcategory(const aqft::EnumeratedPtr& cat, Rng& rng);
/// The unique functor to the terminal category.
aqft::Functor collapse_functor(const aqft::EnumeratedPtr& cat);

// ---------------------------------------------------------------------------
// Orthogonality

using OrderedPairs = std::set<std::pair<std::size_t, std::size_t>>;

/// Naive fixed point: add symmetric pairs and all (g f1 h1, g f2 h2) until stable.
OrderedPairs saturate(const aqft::EnumeratedCategory& cat, const OrderedPairs& seed);
OrderedPairs ordered(const std::set<aqft::OrthoRel::Pair>& unordered);
OrderedPairs ordered(const aqft::OrthoRel& rel);

/// Symmetric, common targets, and stable under pre- and post-composition.
bool is_closed(const aqft::EnumeratedCategory& cat, const OrderedPairs& rel);

// ---------------------------------------------------------------------------
// Operad

/// Breadth-first search over adjacent swaps of orthogonal labels.
bool bfs_equal(const aqft::OperadOp& a, const aqft::OperadOp& b, const aqft::EnumeratedCategory& cat,
               const OrderedPairs& rel);

/// Equivalence classes of all n! arrangements of a fixed tuple; class id per
/// permutation in lexicographic order of permutations.
std::vector<std::size_t> bfs_classes(const std::vector<std::size_t>& tuple_indices, const OrderedPairs& rel,
                                     std::vector<aqft::Permutation>& perms);

aqft::Permutation random_permutation(std::size_t n, Rng& rng);

/// Random operation with target `target` and arity n, or nullopt when nothing maps into it.
std::optional<aqft::OperadOp> random_operation(const aqft::EnumeratedCategory& cat, const aqft::Object& target,
                                               std::size_t n, Rng& rng);

/// Operad laws on one random composable configuration over (cat, rel). The
/// permutations expected by the equivariance laws are computed directly from
/// the word reading (label (i, j) of a composite sits in block i), not through
/// the library's block permutations.
struct OperadLaws {
  bool associativity = true;
  bool left_unit = true;
  bool right_unit = true;
  bool equivariance_outer = true;  // θσ ∘ (φ) vs (θ ∘ φσ^{-1})·σ<k>
  bool equivariance_inner = true;  // θ ∘ (φ_i τ_i) vs (θ ∘ φ)·(τ_1 ⊕ ... ⊕ τ_n)
  bool all() const { return associativity && left_unit && right_unit && equivariance_outer && equivariance_inner; }
};
OperadLaws check_operad_laws(const aqft::EnumeratedCategory& cat, const aqft::OrthoRel& rel, Rng& rng,
                             std::size_t max_arity = 3);

// ---------------------------------------------------------------------------
// Linear algebra

Dense to_dense(const aqft::Matrix& m);
/// Gauss-Jordan with column-major pivot search over the rationals.
std::size_t dense_rank(Dense m);
std::optional<Dense> dense_inverse(Dense m);
aqft::Matrix from_dense(const Dense& m, std::size_t cols);

/// dim H_n via dense ranks.
std::map<int, std::size_t> dense_homology(const aqft::ChainComplex& x);
/// Mapping cone of f : X -> Y, Cone_n = X_{n-1} ⊕ Y_n, d(x, y) = (-d x, f x + d y).
aqft::ChainComplex mapping_cone(const aqft::ChainMap& f);
/// f is a quasi-isomorphism iff its cone is acyclic (dense ranks).
bool cone_quasi_iso(const aqft::ChainMap& f);

/// Random complex in degrees [lo, hi] with every dimension <= max_dim, as a
/// sum of points and disks in a random basis. `pieces` receives the
/// (degree, is_disk) list in the standard basis before the change of basis.
struct RandomComplex {
  aqft::ChainComplex complex;
  std::vector<std::pair<int, bool>> pieces;
  std::map<int, Dense> basis_change;  // columns = new basis in standard coordinates
};
RandomComplex random_complex(Rng& rng, int lo = -3, int hi = 3, std::size_t max_dim = 6);
/// A random chain map X -> Y assembled piecewise in the standard bases (zero
/// or scalar maps between matching pieces), then conjugated into the random bases.
aqft::ChainMap random_chain_map(const RandomComplex& x, const RandomComplex& y, Rng& rng);

Rational random_rational(Rng& rng, long bound = 3);

}  // namespace oracle
