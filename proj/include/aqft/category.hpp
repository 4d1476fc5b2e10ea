#pragma once

#include "aqft/rational.hpp"
#include "aqft/report.hpp"

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace aqft {

/// An object of a small category. `id` is canonical: two objects are equal iff
/// their ids agree. Parametric backends keep their exact payload in `coords`.
struct Object {
  std::string id;
  std::vector<ExtRational> coords;

  friend bool operator==(const Object& a, const Object& b) { return a.id == b.id; }
  friend auto operator<=>(const Object& a, const Object& b) { return a.id <=> b.id; }
};

/// A morphism `id : src -> tgt`. For parametric backends `id` is the canonical
/// rendering of `params`, so equality is exact.
struct Morphism {
  std::string id;
  Object src;
  Object tgt;
  std::vector<Rational> params;

  std::string describe() const;

  friend bool operator==(const Morphism& a, const Morphism& b) {
    return a.id == b.id && a.src == b.src && a.tgt == b.tgt;
  }
  friend bool operator<(const Morphism& a, const Morphism& b) {
    return std::tie(a.id, a.src.id, a.tgt.id) < std::tie(b.id, b.src.id, b.tgt.id);
  }
};

enum class Backend { Enumerated, Parametric };

class Category {
 public:
  virtual ~Category() = default;

  virtual std::string name() const = 0;
  virtual Backend backend() const = 0;
  bool enumerated() const { return backend() == Backend::Enumerated; }

  virtual bool has_object(const Object& x) const = 0;
  virtual bool has_morphism(const Morphism& f) const = 0;
  virtual Morphism identity(const Object& x) const = 0;

  /// g ∘ f. Throws Error(NonComposable) unless target(f) == source(g).
  Morphism compose(const Morphism& g, const Morphism& f) const;

  /// The inverse of f if it exists. Parametric backends without a closed-form
  /// inverse predicate throw Error(UndecidableForBackend).
  virtual std::optional<Morphism> inverse(const Morphism& f) const = 0;

  virtual Object parse_object(std::string_view text) const = 0;
  virtual Morphism parse_morphism(std::string_view text) const = 0;

  /// Full enumeration; Error(BackendUnsupported) for parametric backends.
  virtual const std::vector<Object>& objects() const;
  virtual const std::vector<Morphism>& morphisms() const;
  virtual std::vector<Morphism> hom(const Object& a, const Object& b) const;

  virtual Object sample_object(Rng& rng) const = 0;
  virtual Morphism sample_morphism_from(const Object& a, Rng& rng) const = 0;
  virtual Morphism sample_morphism_into(const Object& b, Rng& rng) const = 0;
  /// A random element of hom(a, b), or nullopt when none was found (empty hom-set).
  virtual std::optional<Morphism> sample_morphism_between(const Object& a, const Object& b, Rng& rng) const = 0;
  Morphism sample_morphism(Rng& rng) const { return sample_morphism_from(sample_object(rng), rng); }

 protected:
  virtual Morphism compose_unchecked(const Morphism& g, const Morphism& f) const = 0;
};

using CategoryPtr = std::shared_ptr<const Category>;

bool same_category(const CategoryPtr& a, const CategoryPtr& b);

/// A finite category given by full tables. Morphisms are addressed by index
/// internally; the composition table is total on composable pairs.
class EnumeratedCategory final : public Category {
 public:
  class Builder {
   public:
    explicit Builder(std::string name) : name_(std::move(name)) {}
    Builder& object(std::string id);
    Builder& morphism(std::string id, std::string src, std::string tgt);
    Builder& identity(std::string object, std::string morphism_id);
    /// Records g ∘ f = gf. Composites with identities are implied.
    Builder& composite(std::string g, std::string f, std::string gf);
    /// Validates closure, identities and associativity. Throws Error(InvalidCategory).
    std::shared_ptr<const EnumeratedCategory> build() const;

   private:
    std::string name_;
    std::vector<std::string> objects_;
    std::vector<std::array<std::string, 3>> morphisms_;
    std::map<std::string, std::string> identities_;
    std::vector<std::array<std::string, 3>> composites_;
  };

  std::string name() const override { return name_; }
  Backend backend() const override { return Backend::Enumerated; }
  bool has_object(const Object& x) const override;
  bool has_morphism(const Morphism& f) const override;
  Morphism identity(const Object& x) const override;
  std::optional<Morphism> inverse(const Morphism& f) const override;
  Object parse_object(std::string_view text) const override;
  Morphism parse_morphism(std::string_view text) const override;
  const std::vector<Object>& objects() const override { return objects_; }
  const std::vector<Morphism>& morphisms() const override { return morphisms_; }
  std::vector<Morphism> hom(const Object& a, const Object& b) const override;
  Object sample_object(Rng& rng) const override;
  Morphism sample_morphism_from(const Object& a, Rng& rng) const override;
  Morphism sample_morphism_into(const Object& b, Rng& rng) const override;
  std::optional<Morphism> sample_morphism_between(const Object& a, const Object& b, Rng& rng) const override;

  std::size_t object_index(const Object& x) const;
  std::size_t morphism_index(const Morphism& f) const;
  std::size_t morphism_index(std::string_view id) const;
  const Morphism& morphism(std::size_t index) const { return morphisms_.at(index); }
  std::size_t source_index(std::size_t m) const { return src_.at(m); }
  std::size_t target_index(std::size_t m) const { return tgt_.at(m); }
  std::size_t identity_index(std::size_t object) const { return identity_.at(object); }
  bool is_identity(std::size_t m) const { return identity_.at(src_.at(m)) == m; }
  /// Index of g ∘ f, or nullopt when not composable.
  std::optional<std::size_t> compose_index(std::size_t g, std::size_t f) const;
  std::vector<std::size_t> morphisms_into(std::size_t object) const;
  std::vector<std::size_t> morphisms_from(std::size_t object) const;

 protected:
  Morphism compose_unchecked(const Morphism& g, const Morphism& f) const override;

 private:
  EnumeratedCategory() = default;

  std::string name_;
  std::vector<Object> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<std::size_t> src_;
  std::vector<std::size_t> tgt_;
  std::vector<std::size_t> identity_;
  std::map<std::string, std::size_t, std::less<>> object_lookup_;
  std::map<std::string, std::size_t, std::less<>> morphism_lookup_;
  std::vector<std::ptrdiff_t> table_;  // table_[g * n + f] = g∘f or -1
};

using EnumeratedPtr = std::shared_ptr<const EnumeratedCategory>;

/// Downcast; Error(BackendUnsupported) for parametric backends.
EnumeratedPtr as_enumerated(const CategoryPtr& cat, std::string_view what);

/// The category with one object "*" and only its identity.
EnumeratedPtr make_terminal_category(std::string name = "terminal");

struct Functor {
  std::string name;
  CategoryPtr source;
  CategoryPtr target;
  std::function<Object(const Object&)> object_map;
  std::function<Morphism(const Morphism&)> morphism_map;

  Object operator()(const Object& x) const { return object_map(x); }
  Morphism operator()(const Morphism& f) const { return morphism_map(f); }
};

Functor identity_functor(CategoryPtr cat);
/// G ∘ F. Error(ShapeMismatch) when target(F) is not source(G).
Functor compose(const Functor& g, const Functor& f);
/// Functor out of an enumerated category from id tables; identities may be omitted.
Functor functor_from_tables(std::string name, EnumeratedPtr source, CategoryPtr target,
                            const std::map<std::string, std::string>& objects,
                            const std::map<std::string, std::string>& morphisms);

/// Endpoint bookkeeping, identities, composition: exhaustive over enumerated
/// sources, sampled otherwise.
Report check_functor(const Functor& f, const SampleConfig& cfg = {});

struct NatTransf {
  std::string name;
  Functor source;
  Functor target;
  /// Component at x : source(x) -> target(x); nullopt when no component exists.
  std::function<std::optional<Morphism>(const Object&)> component;
};

Verdict check_naturality(const NatTransf& alpha, const SampleConfig& cfg = {});

struct AdjunctionData {
  Functor left;   // L : C -> D
  Functor right;  // R : D -> C
  NatTransf unit;    // id_C -> R L
  NatTransf counit;  // L R -> id_D
};

/// Verdicts "unit naturality", "counit naturality", "triangle identity 1"
/// (ε_L ∘ Lη = id), "triangle identity 2" (Rε ∘ η_R = id).
Report check_adjunction(const AdjunctionData& adj, const SampleConfig& cfg = {});

struct IsoResult {
  bool is_iso = false;
  std::optional<Morphism> inverse;
};

IsoResult is_isomorphism(const Category& cat, const Morphism& f);

/// Domains to iterate for a check: everything for enumerated categories,
/// `cfg.samples` seeded draws otherwise. `coverage` is updated accordingly.
std::vector<Object> objects_to_check(const Category& cat, Rng& rng, const SampleConfig& cfg, Coverage& coverage);
std::vector<Morphism> morphisms_to_check(const Category& cat, Rng& rng, const SampleConfig& cfg, Coverage& coverage);
/// Pairs (g, f) with target(f) = source(g).
std::vector<std::pair<Morphism, Morphism>> composable_pairs(const Category& cat, Rng& rng, const SampleConfig& cfg,
                                                            Coverage& coverage);

}  // namespace aqft
