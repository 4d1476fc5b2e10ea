#pragma once

// Reflective strictification A_st = L*ι*(A) and the relative Cauchy evolution
// as an action of the integers.

#include "aqft/aqft.hpp"
#include "aqft/localize.hpp"

#include <map>
#include <string>
#include <vector>

namespace aqft {

struct UnitComponent {
  Object object;
  Morphism eta;        // η_M : M -> ιL(M)
  DgAlgebraMap map;    // A(η_M) : A(M) -> A_st(M)
  QuasiIsoResult quasi_iso;
  bool iso = false;
};

struct StrictificationResult {
  AqftModel input;
  AqftModel output;
  std::vector<UnitComponent> units;
  Coverage unit_coverage;
  TimeSliceResult input_verdict;
  TimeSliceResult output_verdict;
  /// "output strict time-slice", "unit components quasi-iso",
  /// "homotopy time-slice implies quasi-iso units".
  Report certificate;
};

/// Requires certify_reflective(data) to pass (Error(UncertifiedReflectiveData)).
StrictificationResult strictify_reflective(const AqftModel& model, const ReflectiveData& data,
                                           const SampleConfig& cfg = {});

/// A_st(ι ε_{LM}) : (A_st)_st(M) -> A_st(M) is an isomorphism for every M.
Verdict check_idempotence(const StrictificationResult& result, const ReflectiveData& data,
                          const SampleConfig& cfg = {});

// ---------------------------------------------------------------------------
// Relative Cauchy evolution

/// The loop M <-i_+- M_+ -j_+-> M_h <-j_-- M_- -i_--> M in the RCE category:
/// backward i_+, forward j_+, backward j_-, forward i_-.
ZigZag rce_loop(const Category& rce);

enum class RceMode { Strict, Homology };

struct RceAction {
  RceMode mode = RceMode::Strict;
  /// Generator per degree: on A(M) itself (strict) or on the chosen homology
  /// basis of A(M) (homology).
  std::map<int, Matrix> generator;

  /// g^n; negative powers through the inverse.
  std::map<int, Matrix> power(long n) const;
  /// action(m + n) = action(m) action(n) for |m|, |n| <= bound and action(0) = id.
  Verdict group_law(long bound = 5) const;
};

/// Error(TimeSliceViolated) when the model is not strict (strict mode) or not
/// homotopy (homology mode) on all morphisms.
RceAction rce_action(const AqftModel& model, RceMode mode);

/// The homology generator agrees with H of the strict generator (strict inputs).
Verdict rce_modes_agree(const AqftModel& model);

}  // namespace aqft
