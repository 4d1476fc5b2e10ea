#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace aqft {

/// How much of a (possibly infinite) domain a check looked at.
struct Coverage {
  bool exhaustive = true;
  std::size_t checked = 0;

  /// "exhaustive" or "sampled, N". A passing sampled check is never a proof.
  std::string describe() const;
  void merge(const Coverage& other);
};

struct Verdict {
  std::string name;
  bool passed = true;
  Coverage coverage;
  std::optional<std::string> witness;
  std::string detail;
};

struct Report {
  std::vector<Verdict> verdicts;

  bool passed() const;
  const Verdict& at(const std::string& name) const;
  const Verdict* find(const std::string& name) const;
  Coverage coverage() const;
  void add(Verdict v) { verdicts.push_back(std::move(v)); }
  void append(const Report& other, const std::string& prefix = {});
};

/// Deterministic sampling configuration for checks over parametric categories.
struct SampleConfig {
  std::size_t samples = 256;
  std::uint64_t seed = 0x5eedULL;
};

}  // namespace aqft
