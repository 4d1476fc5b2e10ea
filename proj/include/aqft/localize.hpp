#pragma once

#include "aqft/category.hpp"
#include "aqft/ortho.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace aqft {

/// A class of morphisms W: a predicate, plus the explicit list when it is finite.
struct MorphismSet {
  std::string description;
  std::function<bool(const Morphism&)> contains;
  std::optional<std::vector<Morphism>> elements;

  static MorphismSet all(const CategoryPtr& cat);
  static MorphismSet of(const CategoryPtr& cat, std::vector<Morphism> elements);
};

enum class Direction { Forward, Backward };

struct ZigZagStep {
  Morphism morphism;
  Direction direction;
};

/// A chain of forward morphisms and formally inverted W-morphisms.
struct ZigZag {
  Object source;
  std::vector<ZigZagStep> steps;

  Object target() const;
  /// Endpoint chaining and W-membership of backward steps.
  /// Throws Error(InvalidArgument) or Error(BackwardStepNotInW).
  void validate(const MorphismSet& w) const;
};

/// A localization functor together with the class it inverts, used to evaluate
/// zig-zags. Either certified reflective data or an explicitly supplied model
/// (such as BZ for the RCE category).
struct Localization {
  Functor functor;
  MorphismSet w;
};

struct ReflectiveData {
  OrthoCat base;
  OrthoCat localized;
  AdjunctionData adj;  // left = L, right = ι
  MorphismSet w;

  Localization localization() const { return Localization{adj.left, w}; }
};

/// Verdicts (a)..(g). (g) checks ι*(⊥_C) ⊆ ⊥_D; together with (e), which is
/// ⊥_D ⊆ ι*(⊥_C), this is the equality ⊥_D = ι*(⊥_C).
struct Certificate {
  Report report;
  bool verified = false;
  std::string status;
};

Certificate certify_reflective(const ReflectiveData& data, const SampleConfig& cfg = {});

/// L⁻¹(Iso D): explicit over enumerated sources, a predicate otherwise.
MorphismSet derive_w(const Functor& l);

/// pushforward(L, rel).
OrthoRel localized_orthogonality(const Functor& l, const OrthoRel& rel);

/// Value of z in the localized category: apply L stepwise, inverting the
/// backward steps, and compose.
Morphism zigzag_normalize(const ZigZag& z, const Localization& loc);
Morphism zigzag_normalize(const ZigZag& z, const ReflectiveData& data);

}  // namespace aqft
