#pragma once

// AQFT models in functor form: a dg-algebra per object and a dg-algebra map
// per morphism of an orthogonal category. Operations of higher arity are
// induced by multiplication, so causality is checked as graded commutation of
// pushed-forward observables:
//   A(f1)(a) A(f2)(b) = (-1)^{|a||b|} A(f2)(b) A(f1)(a)   for f1 ⊥ f2.

#include "aqft/category.hpp"
#include "aqft/homalg.hpp"
#include "aqft/localize.hpp"
#include "aqft/ortho.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace aqft {

struct AqftModel {
  std::string name;
  OrthoCat base;
  std::function<DgAlgebraPtr(const Object&)> algebra;
  std::function<DgAlgebraMap(const Morphism&)> action;
};

/// Model over an enumerated base from id tables. Identities may be omitted.
/// Throws Error(InvalidArgument) when an object or morphism is missing.
AqftModel model_from_tables(std::string name, OrthoCat base, std::map<std::string, DgAlgebraPtr> algebras,
                            std::map<std::string, DgAlgebraMap> actions);

/// Verdicts "algebras", "endpoints", "identities", "composition",
/// "dg-algebra maps", "Einstein causality".
Report check_aqft(const AqftModel& model, const SampleConfig& cfg = {});

enum class TimeSlice { Strict, HomotopyOnly, Neither };
const char* to_string(TimeSlice t);

struct TimeSliceResult {
  TimeSlice kind = TimeSlice::Strict;
  /// First w that is not an isomorphism (homotopy-only) or not a quasi-iso (neither).
  std::optional<Morphism> witness;
  std::string detail;
  Coverage coverage;
};

/// strict: every A(w) an isomorphism; homotopy-only: every A(w) a quasi-iso
/// but some not an isomorphism; neither otherwise.
TimeSliceResult time_slice_verdict(const AqftModel& model, const MorphismSet& w, const SampleConfig& cfg = {});

/// F*(A) = A ∘ F on the source orthogonal category (F, src_rel) -> model.base.
AqftModel pullback_aqft(const Functor& f, const OrthoRel& src_rel, const AqftModel& model);

/// Value of a zig-zag under a model: A of forward steps, inverses of A of
/// backward steps. Error(TimeSliceViolated) when a backward step is not invertible.
ChainMap zigzag_action(const AqftModel& model, const ZigZag& z, const MorphismSet& w);

/// i_!(y(f)[r]) : i_!(y(N)[r]) -> i_!(y(M)[r]) for f : M -> N, one
/// dg-algebra map per object of the base.
struct WGenerator {
  Morphism f;
  int r = 0;
  std::size_t max_weight = 0;
  std::map<std::string, DgAlgebraMap> components;

  std::string describe() const;
};

/// Generators for every f in W and r in [r_lo, r_hi]. Needs an enumerated base
/// with empty orthogonality (Error(BackendUnsupported) otherwise).
std::vector<WGenerator> what_generators(const OrthoCat& base, const MorphismSet& w, int r_lo, int r_hi,
                                        std::size_t max_weight);
/// "dg-algebra maps" for every component and "naturality" over all morphisms of the base.
Report check_generator(const Category& cat, const WGenerator& g);
/// Generators for r and r+1 agree weight by weight, with weight-k blocks moved
/// from degree r·k to degree (r+1)·k.
Verdict shift_consistency(const WGenerator& lower, const WGenerator& upper);

}  // namespace aqft
