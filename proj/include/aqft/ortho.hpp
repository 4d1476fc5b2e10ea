#pragma once

#include "aqft/category.hpp"

#include <set>
#include <utility>

namespace aqft {

/// An orthogonality relation. Over enumerated carriers it is an explicit set of
/// unordered pairs of morphism indices (stored with first <= second); over
/// parametric carriers it is a named predicate that must be closed by construction.
class OrthoRel {
 public:
  using Pair = std::pair<std::size_t, std::size_t>;

  /// The empty relation on any carrier.
  static OrthoRel empty(CategoryPtr carrier);
  /// Explicit pairs taken as given (no closure). Error(BadSeedPair) when a pair lacks a common target.
  static OrthoRel from_pairs(EnumeratedPtr carrier, const std::set<Pair>& pairs);
  /// Materialized over enumerated carriers, kept symbolic otherwise.
  static OrthoRel from_predicate(CategoryPtr carrier, std::string name,
                                 std::function<bool(const Morphism&, const Morphism&)> pred);

  const CategoryPtr& carrier() const { return carrier_; }
  bool is_explicit() const { return explicit_; }
  bool is_empty_relation() const;
  const std::string& name() const { return name_; }

  bool contains(const Morphism& f1, const Morphism& f2) const;
  bool contains_indices(std::size_t f1, std::size_t f2) const;
  /// Unordered pairs (explicit relations only).
  const std::set<Pair>& pairs() const;
  /// Ordered witnesses (f1, f2), one per unordered pair.
  std::vector<std::pair<Morphism, Morphism>> ordered_pairs() const;

  friend bool operator==(const OrthoRel& a, const OrthoRel& b);

 private:
  CategoryPtr carrier_;
  bool explicit_ = true;
  std::string name_ = "explicit";
  std::set<Pair> pairs_;
  std::function<bool(const Morphism&, const Morphism&)> predicate_;
};

struct OrthoCat {
  CategoryPtr cat;
  OrthoRel rel;
};

/// Smallest symmetric, composition-stable relation containing `seed`
/// (worklist saturation, O(|Mor|^4) worst case).
OrthoRel closure(const EnumeratedPtr& cat, const std::set<OrthoRel::Pair>& seed);
OrthoRel closure(const OrthoRel& rel);

/// Symmetry is structural; reports "common target" and "composition stable".
Report validate(const OrthoRel& rel, const SampleConfig& cfg = {});

/// True iff F(f1) ⊥ F(f2) whenever f1 ⊥ f2. Witness is the first offending ordered pair.
Verdict is_orthogonal_functor(const Functor& f, const OrthoRel& src, const OrthoRel& tgt,
                              const SampleConfig& cfg = {});

/// Closure of the image pairs: the minimal relation making F orthogonal.
OrthoRel pushforward(const Functor& f, const OrthoRel& rel);
/// {(f1, f2) : F(f1) ⊥ F(f2)}; valid without re-closing.
OrthoRel pullback(const Functor& f, const OrthoRel& rel);

/// Verdicts "fully faithful", "essentially surjective", "orthogonality is pullback".
Report is_ortho_equivalence(const Functor& f, const OrthoRel& src, const OrthoRel& tgt);

/// Fully faithful check for enumerated source and target (hom-set bijections).
Verdict is_fully_faithful(const Functor& f);

}  // namespace aqft
