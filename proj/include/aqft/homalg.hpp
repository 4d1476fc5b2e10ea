#pragma once

// Bounded chain complexes of finite-dimensional rational vector spaces, chain
// maps, homology and dg-algebras.
//
// Conventions: d_n goes from degree n to degree n-1 and is stored as a
// dim(n-1) x dim(n) matrix (columns are source basis vectors). The shift is
// X[r]_n = X_{n-r} with differential (-1)^r d_X; chain maps shift without a sign.

#include "aqft/category.hpp"
#include "aqft/linalg.hpp"
#include "aqft/report.hpp"

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace aqft {

class ChainComplex {
 public:
  ChainComplex() = default;
  /// Validates shapes and d^2 = 0; throws Error(InvalidComplex). Degrees of
  /// dimension zero are dropped from the support.
  ChainComplex(std::map<int, std::size_t> dims, std::map<int, Matrix> differentials);

  static ChainComplex zero() { return {}; }
  /// K^n concentrated in degree `degree` with zero differential.
  static ChainComplex concentrated(int degree, std::size_t dim);

  std::size_t dim(int n) const;
  /// d_n : X_n -> X_{n-1}; a zero matrix of the right shape when absent.
  Matrix differential(int n) const;
  const std::map<int, std::size_t>& dims() const { return dims_; }
  std::set<int> support() const;
  bool is_zero() const { return dims_.empty(); }
  std::size_t total_dim() const;

  friend bool operator==(const ChainComplex& a, const ChainComplex& b);

 private:
  std::map<int, std::size_t> dims_;
  std::map<int, Matrix> d_;
};

class ChainMap {
 public:
  ChainMap() = default;
  /// Validates shapes and d f = f d; throws Error(InvalidComplex).
  ChainMap(ChainComplex source, ChainComplex target, std::map<int, Matrix> components);

  static ChainMap identity(const ChainComplex& x);
  static ChainMap zero(const ChainComplex& source, const ChainComplex& target);

  const ChainComplex& source() const { return source_; }
  const ChainComplex& target() const { return target_; }
  /// target.dim(n) x source.dim(n); zero when absent.
  Matrix component(int n) const;
  std::set<int> support() const;

  friend bool operator==(const ChainMap& a, const ChainMap& b);

 private:
  ChainComplex source_;
  ChainComplex target_;
  std::map<int, Matrix> f_;
};

/// g ∘ f.
ChainMap compose(const ChainMap& g, const ChainMap& f);

/// dim H_n for every n in the support.
std::map<int, std::size_t> homology(const ChainComplex& x, PivotOrder order = PivotOrder::MinFill);

/// Chosen basis of H_n(X): cycle representatives plus the coordinate map on cycles.
struct HomologyBasis {
  int degree = 0;
  std::vector<SparseVector> representatives;
  std::vector<SparseVector> boundaries;  // basis of B_n
  /// Coordinates of the class of a cycle in the representative basis.
  SparseVector coordinates(const SparseVector& cycle) const;
};

HomologyBasis homology_basis(const ChainComplex& x, int n);
/// H_n(f) in the chosen bases: dim H_n(target) x dim H_n(source).
Matrix induced_map(const ChainMap& f, int n);

struct QuasiIsoResult {
  bool quasi_iso = true;
  std::optional<int> witness_degree;
  std::string detail;
  explicit operator bool() const { return quasi_iso; }
};

/// H_n(f) invertible for every n in the joint support.
QuasiIsoResult is_quasi_iso(const ChainMap& f);
/// Same, restricted to the listed degrees.
QuasiIsoResult is_quasi_iso_in(const ChainMap& f, const std::set<int>& degrees);
/// Degreewise square and invertible.
QuasiIsoResult is_iso_chainmap(const ChainMap& f);

ChainComplex shift(const ChainComplex& x, int r);
ChainMap shift(const ChainMap& f, int r);

// ---------------------------------------------------------------------------
// dg-algebras

struct Basis {
  int degree = 0;
  std::size_t index = 0;
  friend auto operator<=>(const Basis&, const Basis&) = default;
};

/// Homogeneous components by degree.
using GradedVector = std::map<int, SparseVector>;

GradedVector basis_vector(const Basis& b);
void axpy(GradedVector& y, const Rational& a, const GradedVector& x);

class DgAlgebra {
 public:
  DgAlgebra() = default;
  /// Products of basis elements; missing pairs multiply to zero. The product
  /// of a and b lives in degree |a| + |b|. Does not check the algebra laws
  /// (see check_dga); throws Error(ShapeMismatch) on out-of-range entries.
  DgAlgebra(ChainComplex complex, SparseVector unit, std::map<std::pair<Basis, Basis>, SparseVector> products);

  const ChainComplex& complex() const { return complex_; }
  const SparseVector& unit() const { return unit_; }
  const std::map<std::pair<Basis, Basis>, SparseVector>& products() const { return products_; }

  GradedVector multiply(const GradedVector& a, const GradedVector& b) const;
  SparseVector multiply(const Basis& a, const Basis& b) const;
  GradedVector d(const GradedVector& a) const;
  std::vector<Basis> basis() const;

  /// Optional bookkeeping for free algebras: weight and label per basis element.
  std::map<int, std::vector<std::size_t>> weights;
  std::map<int, std::vector<std::string>> labels;

  std::string label(const Basis& b) const;

  friend bool operator==(const DgAlgebra& a, const DgAlgebra& b);

 private:
  ChainComplex complex_;
  SparseVector unit_;
  std::map<std::pair<Basis, Basis>, SparseVector> products_;
};

using DgAlgebraPtr = std::shared_ptr<const DgAlgebra>;

/// Verdicts "unit", "associativity", "Leibniz" on all basis pairs and triples.
/// d^2 = 0 is enforced by ChainComplex construction.
Report check_dga(const DgAlgebra& a);

struct DgAlgebraMap {
  DgAlgebraPtr source;
  DgAlgebraPtr target;
  ChainMap map;

  GradedVector apply(const GradedVector& v) const;
};

/// Identity map of a shared algebra.
DgAlgebraMap identity_map(const DgAlgebraPtr& a);
/// Builds the chain map from components and checks shapes/commutation.
DgAlgebraMap make_dga_map(DgAlgebraPtr source, DgAlgebraPtr target, std::map<int, Matrix> components);
DgAlgebraMap compose(const DgAlgebraMap& g, const DgAlgebraMap& f);
/// Verdicts "unit preserved", "multiplicative" on all basis pairs.
Report check_dga_map(const DgAlgebraMap& f);

/// The ground field Q in degree 0.
DgAlgebraPtr ground_field();
/// Tensor algebra on V truncated at `max_weight`: basis = words of length
/// <= max_weight, concatenation product (zero past the truncation), Leibniz
/// differential with Koszul signs. Words are ordered by length, then
/// lexicographically in the basis of V. `letter_names` (per degree) are used
/// for basis labels; missing names default to "x<deg>.<index>".
using LetterNames = std::map<int, std::vector<std::string>>;
DgAlgebra free_dga(const ChainComplex& v, std::size_t max_weight, const LetterNames& letter_names = {});
/// The dg-algebra map free_dga(V) -> free_dga(V') induced by a chain map f.
DgAlgebraMap free_extension(const ChainMap& f, std::size_t max_weight, const LetterNames& source_names = {},
                            const LetterNames& target_names = {});

/// Linear representation y(M) = Q[C(M, -)] in degree 0; requires an enumerated
/// category (Error(BackendUnsupported) otherwise). Bases follow Category::hom.
ChainComplex yoneda_object(const Category& cat, const Object& m, const Object& n);
/// y(M)(g) for g : N -> N': post-composition.
ChainMap yoneda_postcompose(const Category& cat, const Object& m, const Morphism& g);
/// y(f)_X : y(N)(X) -> y(M)(X), h -> h ∘ f, for f : M -> N.
ChainMap yoneda_precompose(const Category& cat, const Morphism& f, const Object& x);

}  // namespace aqft
