#pragma once

// Truncated cotriple resolution of a dg-algebra for the free/forget comonad
// T = tensor algebra on the underlying complex.
//
// X_k = T^{k+1}(A) has a basis of nested words: a level-0 word of level-1
// words of ... of level-k words of basis elements of A. Truncation keeps trees
// with at most `weight` leaves, where a leaf is either a basis element of A or
// an empty word. This subspace is closed under all faces, degeneracies, the
// extra degeneracy and the internal differential, so the simplicial identities
// hold exactly on it, and the augmented object stays contractible.
//
//   d_i (i < k)  concatenates the words of level i+1 inside each level-i word
//   d_k          multiplies each level-k word in A (empty word -> unit)
//   s_j          wraps every child of each level-j word in a singleton word
//   s_{-1}       wraps the whole tree (extra degeneracy, A -> T(A) for k = -1)
//
// Normalized chains are spanned by trees outside the images of s_0..s_{k-1};
// a tree lies in the image of s_j iff every level-(j+1) word is a singleton.
// Total complex: Tot_n = ⊕_{k+q=n} N_{k,q}, D = Σ_i (-1)^i d_i + (-1)^k d_A.

#include "aqft/aqft.hpp"
#include "aqft/homalg.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace aqft {

class BarObject {
 public:
  BarObject(DgAlgebraPtr algebra, std::size_t depth, std::size_t weight);
  ~BarObject();
  BarObject(BarObject&&) noexcept;
  BarObject& operator=(BarObject&&) noexcept;

  std::size_t depth() const;
  std::size_t weight() const;
  /// w · min(0, lowest degree of A): the lowest internal degree of any tree.
  int lowest_degree() const;
  /// Highest total degree whose homology the depth truncation cannot affect.
  int trusted_top() const;

  /// dim X_k by internal degree, all trees / nondegenerate trees.
  std::map<int, std::size_t> level_dims(std::size_t k) const;
  std::map<int, std::size_t> normalized_dims(std::size_t k) const;

  /// Verdicts "truncation closed", "internal d^2", "faces are chain maps",
  /// "face identities", "augmentation", "face-degeneracy identities",
  /// "degeneracy identities", "extra degeneracy", "faces multiplicative".
  Report check() const;

  /// Normalized total complex in degrees [lo-1, hi+1] with the augmentation
  /// onto A restricted to the same degrees.
  std::pair<ChainComplex, ChainMap> total(int lo, int hi) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct BarResolution {
  std::string theory;
  std::size_t depth = 0;
  std::size_t weight = 0;
  /// One resolution per object of the base (shared when algebras coincide).
  std::vector<std::pair<std::string, std::shared_ptr<const BarObject>>> objects;
};

/// Object-wise truncated resolution of a theory on (C, ∅). Errors:
/// BackendUnsupported (parametric base or nonempty orthogonality),
/// TruncationTooSmall (depth < 1 or weight < 1).
BarResolution bar_truncated(const AqftModel& theory, std::size_t depth, std::size_t weight);

/// check() of every distinct object resolution, verdict names prefixed by the object id.
Report check_simplicial(const BarResolution& res);

struct TotComponent {
  std::string object;
  ChainComplex tot;
  ChainMap augmentation;
  int trusted_lo = 0;
  int trusted_hi = 0;
  QuasiIsoResult verdict;  // on [trusted_lo, trusted_hi]
};

struct TotResult {
  int lo = 0;
  int hi = 0;
  std::vector<TotComponent> components;
  bool quasi_iso() const;
};

/// Error(InvalidArgument) for lo > hi, Error(WindowExceedsTruncation) when no
/// degree of the window is trusted. Partially trusted windows are clipped.
TotResult tot_normalized(const BarResolution& res, int lo, int hi);

}  // namespace aqft
