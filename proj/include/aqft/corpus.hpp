#pragma once

// Built-in example instances. Each entry carries the outcomes it is expected
// to reproduce; corpus_outcome recomputes them, so the corpus doubles as a
// regression suite.

#include "aqft/aqft.hpp"
#include "aqft/category.hpp"
#include "aqft/localize.hpp"
#include "aqft/ortho.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace aqft {

/// Everything a command can act on. Only `base` is mandatory.
struct Bundle {
  std::string name;
  /// Name of the corpus entry this bundle came from, used to refer back to
  /// parts that have no table form (functors out of parametric categories).
  std::string origin;
  OrthoCat base;
  std::optional<Localization> localization;
  std::optional<ReflectiveData> reflective;
  std::optional<MorphismSet> w;
  std::vector<AqftModel> models;

  const AqftModel& model(const std::string& name) const;
};

struct CorpusEntry {
  Bundle bundle;
  std::string description;
  /// (operation, outcome) pairs; see corpus_outcome for the operations.
  std::vector<std::pair<std::string, std::string>> expected;
};

/// RCE category with its BZ localization and the right-adjoint candidate
/// * -> M_h, plus the constant theory with identity actions.
CorpusEntry build_rce();
/// Intervals over the rationals with the reflection onto BRdelta and the
/// interval model (bounded -> square-zero extension, unbounded -> ground field).
CorpusEntry build_loc1();
/// Dyadic open boxes of (0,1)^m down to `levels` subdivisions, disjointness
/// orthogonality, candidate reflection onto the ambient box.
/// Error(InvalidArgument) for m < 1 or levels < 1.
CorpusEntry build_disk(int m = 1, int levels = 2);
/// toy-strict, toy-homotopy, toy-failing, toy-causality, toy-rce.
std::vector<CorpusEntry> build_toy_theories();
/// Theories on the poset U -> V with empty orthogonality used for the bar
/// resolution: "ground-field" and "free" (free dg-algebra on x, y of degrees 0, 1).
std::vector<CorpusEntry> build_bar_theories();
/// Cospan f1 : M1 -> N <- M2 : f2 with f1 ⊥ f2.
CorpusEntry build_cospan();

std::vector<std::string> corpus_names();
/// Error(InvalidArgument) for unknown names.
CorpusEntry corpus_entry(const std::string& name);

/// Recomputes one outcome. Operations:
///   "morphisms", "derive-w", "certify-reflective", "adjunction",
///   "localized-orthogonality", "rce-normalize", "check-aqft/<model>",
///   "time-slice/<model>", "strictify/<model>", "idempotence/<model>",
///   "rce/<model>/strict", "rce/<model>/homology".
std::string corpus_outcome(const CorpusEntry& entry, const std::string& operation, const SampleConfig& cfg = {});

/// Small algebras shared by the corpus and the tests.
DgAlgebraPtr dual_numbers();           // Q[x]/x^2 in degree 0
DgAlgebraPtr acyclic_extension();      // Q ⊕ I, I = (u -> v), |u| = 1, I^2 = 0
DgAlgebraPtr dual_acyclic_extension(); // Q[x]/x^2 ⊕ I, I as above, x I = 0
DgAlgebraPtr matrix_algebra();         // M_2(Q) in degree 0

/// Rows of a matrix in the compact form "[[1,0],[0,2]]".
std::string matrix_string(const Matrix& m);

}  // namespace aqft
