#include "aqft/homalg.hpp"

#include "aqft/errors.hpp"

#include <algorithm>

namespace aqft {

// ---------------------------------------------------------------------------
// ChainComplex

ChainComplex::ChainComplex(std::map<int, std::size_t> dims, std::map<int, Matrix> differentials) {
  for (const auto& [n, k] : dims)
    if (k > 0) dims_.emplace(n, k);
  for (auto& [n, m] : differentials) {
    if (m.rows() != dim(n - 1) || m.cols() != dim(n))
      throw Error(ErrorKind::InvalidComplex, "d_" + std::to_string(n) + " has shape " + std::to_string(m.rows()) +
                                                 "x" + std::to_string(m.cols()) + ", expected " +
                                                 std::to_string(dim(n - 1)) + "x" + std::to_string(dim(n)));
    if (!m.is_zero()) d_.emplace(n, std::move(m));
  }
  for (const auto& [n, m] : d_) {
    auto below = d_.find(n - 1);
    if (below == d_.end()) continue;
    if (!(below->second * m).is_zero())
      throw Error(ErrorKind::InvalidComplex, "d_" + std::to_string(n - 1) + " ∘ d_" + std::to_string(n) + " != 0");
  }
}

ChainComplex ChainComplex::concentrated(int degree, std::size_t dim) { return ChainComplex({{degree, dim}}, {}); }

std::size_t ChainComplex::dim(int n) const {
  auto it = dims_.find(n);
  return it == dims_.end() ? 0 : it->second;
}

Matrix ChainComplex::differential(int n) const {
  auto it = d_.find(n);
  if (it != d_.end()) return it->second;
  return Matrix(dim(n - 1), dim(n));
}

std::set<int> ChainComplex::support() const {
  std::set<int> s;
  for (const auto& [n, k] : dims_) s.insert(n);
  return s;
}

std::size_t ChainComplex::total_dim() const {
  std::size_t t = 0;
  for (const auto& [n, k] : dims_) t += k;
  return t;
}

bool operator==(const ChainComplex& a, const ChainComplex& b) { return a.dims_ == b.dims_ && a.d_ == b.d_; }

// ---------------------------------------------------------------------------
// ChainMap

namespace {

std::set<int> joint_support(const ChainComplex& a, const ChainComplex& b) {
  std::set<int> s = a.support();
  for (int n : b.support()) s.insert(n);
  return s;
}

}  // namespace

ChainMap::ChainMap(ChainComplex source, ChainComplex target, std::map<int, Matrix> components)
    : source_(std::move(source)), target_(std::move(target)) {
  for (auto& [n, m] : components) {
    if (m.rows() != target_.dim(n) || m.cols() != source_.dim(n))
      throw Error(ErrorKind::InvalidComplex, "chain map component in degree " + std::to_string(n) + " has shape " +
                                                 std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                                 ", expected " + std::to_string(target_.dim(n)) + "x" +
                                                 std::to_string(source_.dim(n)));
    if (!m.is_zero()) f_.emplace(n, std::move(m));
  }
  for (int n : joint_support(source_, target_)) {
    if (!(target_.differential(n) * component(n) == component(n - 1) * source_.differential(n)))
      throw Error(ErrorKind::InvalidComplex,
                  "chain map does not commute with the differentials at d_" + std::to_string(n));
  }
}

ChainMap ChainMap::identity(const ChainComplex& x) {
  std::map<int, Matrix> c;
  for (const auto& [n, k] : x.dims()) c.emplace(n, Matrix::identity(k));
  return ChainMap(x, x, std::move(c));
}

ChainMap ChainMap::zero(const ChainComplex& source, const ChainComplex& target) { return ChainMap(source, target, {}); }

Matrix ChainMap::component(int n) const {
  auto it = f_.find(n);
  if (it != f_.end()) return it->second;
  return Matrix(target_.dim(n), source_.dim(n));
}

std::set<int> ChainMap::support() const { return joint_support(source_, target_); }

bool operator==(const ChainMap& a, const ChainMap& b) {
  return a.source_ == b.source_ && a.target_ == b.target_ && a.f_ == b.f_;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  if (!(g.source() == f.target())) throw Error(ErrorKind::ShapeMismatch, "chain maps are not composable");
  std::map<int, Matrix> c;
  for (int n : f.source().support()) c.emplace(n, g.component(n) * f.component(n));
  return ChainMap(f.source(), g.target(), std::move(c));
}

// ---------------------------------------------------------------------------
// Homology

std::map<int, std::size_t> homology(const ChainComplex& x, PivotOrder order) {
  std::map<int, std::size_t> ranks;
  auto rank_of = [&](int n) -> std::size_t {
    auto it = ranks.find(n);
    if (it != ranks.end()) return it->second;
    std::size_t r = rank(x.differential(n), order);
    ranks.emplace(n, r);
    return r;
  };
  std::map<int, std::size_t> h;
  for (const auto& [n, k] : x.dims()) h[n] = k - rank_of(n) - rank_of(n + 1);
  return h;
}

SparseVector HomologyBasis::coordinates(const SparseVector& cycle) const {
  std::vector<SparseVector> cols = boundaries;
  cols.insert(cols.end(), representatives.begin(), representatives.end());
  std::size_t ambient = 0;
  for (const auto& c : cols)
    if (!c.empty()) ambient = std::max(ambient, c.rbegin()->first + 1);
  if (!cycle.empty()) ambient = std::max(ambient, cycle.rbegin()->first + 1);
  auto x = solve(Matrix::from_columns(ambient, cols), cycle);
  if (!x) throw Error(ErrorKind::InvalidArgument, "vector is not a cycle in degree " + std::to_string(degree));
  SparseVector out;
  for (const auto& [i, v] : *x)
    if (i >= boundaries.size()) out.emplace(i - boundaries.size(), v);
  return out;
}

HomologyBasis homology_basis(const ChainComplex& x, int n) {
  HomologyBasis h;
  h.degree = n;
  std::vector<SparseVector> image = x.differential(n + 1).columns();
  for (auto i : independent_subset(image)) h.boundaries.push_back(image[i]);
  std::vector<SparseVector> candidates = h.boundaries;
  std::vector<SparseVector> cycles = nullspace(x.differential(n));
  candidates.insert(candidates.end(), cycles.begin(), cycles.end());
  for (auto i : independent_subset(candidates))
    if (i >= h.boundaries.size()) h.representatives.push_back(candidates[i]);
  return h;
}

namespace {

Matrix induced_map(const ChainMap& f, int n, const HomologyBasis& hx, const HomologyBasis& hy) {
  std::vector<SparseVector> cols;
  Matrix fn = f.component(n);
  for (const auto& z : hx.representatives) cols.push_back(hy.coordinates(fn.apply(z)));
  return Matrix::from_columns(hy.representatives.size(), cols);
}

}  // namespace

Matrix induced_map(const ChainMap& f, int n) {
  return induced_map(f, n, homology_basis(f.source(), n), homology_basis(f.target(), n));
}

QuasiIsoResult is_quasi_iso_in(const ChainMap& f, const std::set<int>& degrees) {
  for (int n : degrees) {
    HomologyBasis hx = homology_basis(f.source(), n);
    HomologyBasis hy = homology_basis(f.target(), n);
    if (hx.representatives.size() != hy.representatives.size())
      return {false, n,
              "dim H_" + std::to_string(n) + ": " + std::to_string(hx.representatives.size()) + " vs " +
                  std::to_string(hy.representatives.size())};
    if (hx.representatives.empty()) continue;
    if (rank(induced_map(f, n, hx, hy)) != hx.representatives.size())
      return {false, n, "H_" + std::to_string(n) + "(f) is singular"};
  }
  return {};
}

QuasiIsoResult is_quasi_iso(const ChainMap& f) { return is_quasi_iso_in(f, f.support()); }

QuasiIsoResult is_iso_chainmap(const ChainMap& f) {
  for (int n : f.support()) {
    std::size_t a = f.source().dim(n), b = f.target().dim(n);
    if (a != b)
      return {false, n, "dimension " + std::to_string(a) + " vs " + std::to_string(b) + " in degree " + std::to_string(n)};
    if (rank(f.component(n)) != a) return {false, n, "component in degree " + std::to_string(n) + " is singular"};
  }
  return {};
}

ChainComplex shift(const ChainComplex& x, int r) {
  std::map<int, std::size_t> dims;
  std::map<int, Matrix> d;
  for (const auto& [n, k] : x.dims()) dims.emplace(n + r, k);
  const Rational sign = r % 2 == 0 ? 1 : -1;
  for (const auto& [n, k] : x.dims()) d.emplace(n + r, x.differential(n).scaled(sign));
  for (const auto& [n, k] : x.dims())
    if (!dims.count(n + r + 1)) d.emplace(n + r + 1, x.differential(n + 1).scaled(sign));
  return ChainComplex(std::move(dims), std::move(d));
}

ChainMap shift(const ChainMap& f, int r) {
  std::map<int, Matrix> c;
  for (int n : f.support()) c.emplace(n + r, f.component(n));
  return ChainMap(shift(f.source(), r), shift(f.target(), r), std::move(c));
}

// ---------------------------------------------------------------------------
// dg-algebras

GradedVector basis_vector(const Basis& b) { return {{b.degree, SparseVector{{b.index, Rational(1)}}}}; }

void axpy(GradedVector& y, const Rational& a, const GradedVector& x) {
  for (const auto& [n, v] : x) {
    auto& slot = y[n];
    axpy(slot, a, v);
    if (slot.empty()) y.erase(n);
  }
}

namespace {

GradedVector normalized(GradedVector v) {
  for (auto it = v.begin(); it != v.end();) it = it->second.empty() ? v.erase(it) : std::next(it);
  return v;
}

}  // namespace

DgAlgebra::DgAlgebra(ChainComplex complex, SparseVector unit, std::map<std::pair<Basis, Basis>, SparseVector> products)
    : complex_(std::move(complex)), unit_(std::move(unit)) {
  auto check = [this](const Basis& b) {
    if (b.index >= complex_.dim(b.degree))
      throw Error(ErrorKind::ShapeMismatch,
                  "basis element " + std::to_string(b.degree) + ":" + std::to_string(b.index) + " out of range");
  };
  for (const auto& [i, v] : unit_) check(Basis{0, i});
  for (auto& [pair, v] : products) {
    check(pair.first);
    check(pair.second);
    for (const auto& [i, c] : v) check(Basis{pair.first.degree + pair.second.degree, i});
    if (!v.empty()) products_.emplace(pair, std::move(v));
  }
}

SparseVector DgAlgebra::multiply(const Basis& a, const Basis& b) const {
  auto it = products_.find({a, b});
  return it == products_.end() ? SparseVector{} : it->second;
}

GradedVector DgAlgebra::multiply(const GradedVector& a, const GradedVector& b) const {
  GradedVector out;
  for (const auto& [da, va] : a)
    for (const auto& [db, vb] : b) {
      SparseVector& slot = out[da + db];
      for (const auto& [i, x] : va)
        for (const auto& [j, y] : vb) {
          auto it = products_.find({Basis{da, i}, Basis{db, j}});
          if (it != products_.end()) axpy(slot, x * y, it->second);
        }
    }
  return normalized(std::move(out));
}

GradedVector DgAlgebra::d(const GradedVector& a) const {
  GradedVector out;
  for (const auto& [n, v] : a) {
    SparseVector image = complex_.differential(n).apply(v);
    if (!image.empty()) axpy(out, Rational(1), GradedVector{{n - 1, image}});
  }
  return out;
}

std::vector<Basis> DgAlgebra::basis() const {
  std::vector<Basis> out;
  for (const auto& [n, k] : complex_.dims())
    for (std::size_t i = 0; i < k; ++i) out.push_back(Basis{n, i});
  return out;
}

std::string DgAlgebra::label(const Basis& b) const {
  auto it = labels.find(b.degree);
  if (it != labels.end() && b.index < it->second.size()) return it->second[b.index];
  return "e" + std::to_string(b.degree) + "." + std::to_string(b.index);
}

bool operator==(const DgAlgebra& a, const DgAlgebra& b) {
  return a.complex_ == b.complex_ && a.unit_ == b.unit_ && a.products_ == b.products_;
}

Report check_dga(const DgAlgebra& a) {
  Report r;
  const auto basis = a.basis();
  const GradedVector unit = normalized({{0, a.unit()}});

  Verdict uv{"unit", true, {true, 0}, std::nullopt, {}};
  for (const auto& b : basis) {
    ++uv.coverage.checked;
    GradedVector e = basis_vector(b);
    if (a.multiply(unit, e) != e || a.multiply(e, unit) != e) {
      uv.passed = false;
      uv.witness = a.label(b);
      break;
    }
  }
  r.add(uv);

  Verdict av{"associativity", true, {true, 0}, std::nullopt, {}};
  for (const auto& x : basis) {
    GradedVector ex = basis_vector(x);
    for (const auto& y : basis) {
      GradedVector xy = a.multiply(ex, basis_vector(y));
      for (const auto& z : basis) {
        ++av.coverage.checked;
        GradedVector ez = basis_vector(z);
        if (a.multiply(xy, ez) != a.multiply(ex, a.multiply(basis_vector(y), ez))) {
          av.passed = false;
          av.witness = "(" + a.label(x) + ", " + a.label(y) + ", " + a.label(z) + ")";
          break;
        }
      }
      if (!av.passed) break;
    }
    if (!av.passed) break;
  }
  r.add(av);

  Verdict lv{"Leibniz", true, {true, 0}, std::nullopt, {}};
  for (const auto& x : basis) {
    GradedVector ex = basis_vector(x);
    for (const auto& y : basis) {
      ++lv.coverage.checked;
      GradedVector ey = basis_vector(y);
      GradedVector rhs = a.multiply(a.d(ex), ey);
      axpy(rhs, x.degree % 2 == 0 ? 1 : -1, a.multiply(ex, a.d(ey)));
      if (a.d(a.multiply(ex, ey)) != rhs) {
        lv.passed = false;
        lv.witness = "(" + a.label(x) + ", " + a.label(y) + ")";
        break;
      }
    }
    if (!lv.passed) break;
  }
  r.add(lv);
  return r;
}

GradedVector DgAlgebraMap::apply(const GradedVector& v) const {
  GradedVector out;
  for (const auto& [n, x] : v) {
    SparseVector y = map.component(n).apply(x);
    if (!y.empty()) out.emplace(n, std::move(y));
  }
  return out;
}

DgAlgebraMap identity_map(const DgAlgebraPtr& a) { return DgAlgebraMap{a, a, ChainMap::identity(a->complex())}; }

DgAlgebraMap make_dga_map(DgAlgebraPtr source, DgAlgebraPtr target, std::map<int, Matrix> components) {
  ChainMap m(source->complex(), target->complex(), std::move(components));
  return DgAlgebraMap{std::move(source), std::move(target), std::move(m)};
}

DgAlgebraMap compose(const DgAlgebraMap& g, const DgAlgebraMap& f) {
  if (g.source != f.target && !(*g.source == *f.target))
    throw Error(ErrorKind::ShapeMismatch, "dg-algebra maps are not composable");
  return DgAlgebraMap{f.source, g.target, compose(g.map, f.map)};
}

Report check_dga_map(const DgAlgebraMap& f) {
  Report r;
  Verdict uv{"unit preserved", true, {true, 1}, std::nullopt, {}};
  GradedVector src_unit = normalized({{0, f.source->unit()}});
  GradedVector tgt_unit = normalized({{0, f.target->unit()}});
  if (f.apply(src_unit) != tgt_unit) {
    uv.passed = false;
    uv.witness = "f(1) != 1";
  }
  r.add(uv);

  Verdict mv{"multiplicative", true, {true, 0}, std::nullopt, {}};
  const auto basis = f.source->basis();
  for (const auto& x : basis) {
    GradedVector ex = basis_vector(x), fx = f.apply(ex);
    for (const auto& y : basis) {
      ++mv.coverage.checked;
      GradedVector ey = basis_vector(y);
      if (f.apply(f.source->multiply(ex, ey)) != f.target->multiply(fx, f.apply(ey))) {
        mv.passed = false;
        mv.witness = "(" + f.source->label(x) + ", " + f.source->label(y) + ")";
        break;
      }
    }
    if (!mv.passed) break;
  }
  r.add(mv);
  return r;
}

DgAlgebraPtr ground_field() {
  static const DgAlgebraPtr k = [] {
    auto a = std::make_shared<DgAlgebra>(ChainComplex::concentrated(0, 1), SparseVector{{0, Rational(1)}},
                                         std::map<std::pair<Basis, Basis>, SparseVector>{
                                             {{Basis{0, 0}, Basis{0, 0}}, SparseVector{{0, Rational(1)}}}});
    a->labels[0] = {"1"};
    return DgAlgebraPtr(a);
  }();
  return k;
}

// ---------------------------------------------------------------------------
// Free algebras

namespace {

using Word = std::vector<std::size_t>;  // positions into the letter list

struct FreeWords {
  std::vector<Basis> letters;
  std::map<Basis, std::size_t> letter_pos;
  std::map<Word, Basis> index;
  std::map<int, std::vector<Word>> by_degree;

  FreeWords(const ChainComplex& v, std::size_t max_weight) {
    for (const auto& [n, k] : v.dims())
      for (std::size_t i = 0; i < k; ++i) {
        letter_pos.emplace(Basis{n, i}, letters.size());
        letters.push_back(Basis{n, i});
      }
    std::vector<Word> layer{Word{}};
    for (std::size_t len = 0; len <= max_weight; ++len) {
      for (const auto& w : layer) add(w);
      if (len == max_weight || letters.empty()) break;
      std::vector<Word> next;
      for (const auto& w : layer)
        for (std::size_t l = 0; l < letters.size(); ++l) {
          Word x = w;
          x.push_back(l);
          next.push_back(std::move(x));
        }
      layer = std::move(next);
    }
  }

  int degree(const Word& w) const {
    int d = 0;
    for (auto l : w) d += letters[l].degree;
    return d;
  }

  void add(const Word& w) {
    int d = degree(w);
    auto& list = by_degree[d];
    index.emplace(w, Basis{d, list.size()});
    list.push_back(w);
  }
};

}  // namespace

DgAlgebra free_dga(const ChainComplex& v, std::size_t max_weight, const LetterNames& letter_names) {
  FreeWords words(v, max_weight);
  std::map<int, std::size_t> dims;
  for (const auto& [n, list] : words.by_degree) dims[n] = list.size();

  std::map<int, Matrix> d;
  for (const auto& [n, list] : words.by_degree) {
    Matrix m(dims.count(n - 1) ? dims[n - 1] : 0, list.size());
    for (std::size_t col = 0; col < list.size(); ++col) {
      const Word& w = list[col];
      int before = 0;
      for (std::size_t p = 0; p < w.size(); ++p) {
        const Basis& letter = words.letters[w[p]];
        SparseVector dl = v.differential(letter.degree).apply(SparseVector{{letter.index, Rational(1)}});
        const Rational sign = before % 2 == 0 ? 1 : -1;
        for (const auto& [i, c] : dl) {
          Word x = w;
          x[p] = words.letter_pos.at(Basis{letter.degree - 1, i});
          m.add(words.index.at(x).index, col, sign * c);
        }
        before += letter.degree;
      }
    }
    d.emplace(n, std::move(m));
  }

  std::map<std::pair<Basis, Basis>, SparseVector> products;
  for (const auto& [a, ba] : words.index)
    for (const auto& [b, bb] : words.index) {
      Word ab = a;
      ab.insert(ab.end(), b.begin(), b.end());
      auto it = words.index.find(ab);
      if (it == words.index.end()) continue;
      products.emplace(std::make_pair(ba, bb), SparseVector{{it->second.index, Rational(1)}});
    }

  DgAlgebra out(ChainComplex(dims, std::move(d)), SparseVector{{words.index.at(Word{}).index, Rational(1)}},
                std::move(products));
  for (const auto& [n, list] : words.by_degree)
    for (const auto& w : list) {
      out.weights[n].push_back(w.size());
      std::string label;
      for (std::size_t p = 0; p < w.size(); ++p) {
        const Basis& l = words.letters[w[p]];
        auto names = letter_names.find(l.degree);
        label += p ? "⊗" : "";
        if (names != letter_names.end() && l.index < names->second.size())
          label += names->second[l.index];
        else
          label += "x" + std::to_string(l.degree) + "." + std::to_string(l.index);
      }
      out.labels[n].push_back(w.empty() ? "1" : label);
    }
  return out;
}

DgAlgebraMap free_extension(const ChainMap& f, std::size_t max_weight, const LetterNames& source_names,
                            const LetterNames& target_names) {
  auto source = std::make_shared<const DgAlgebra>(free_dga(f.source(), max_weight, source_names));
  auto target = std::make_shared<const DgAlgebra>(free_dga(f.target(), max_weight, target_names));
  FreeWords sw(f.source(), max_weight), tw(f.target(), max_weight);
  std::map<int, Matrix> comps;
  for (const auto& [n, list] : sw.by_degree) {
    Matrix m(target->complex().dim(n), list.size());
    for (std::size_t col = 0; col < list.size(); ++col) {
      std::map<Word, Rational> acc{{Word{}, Rational(1)}};
      for (auto l : list[col]) {
        const Basis& letter = sw.letters[l];
        SparseVector image = f.component(letter.degree).apply(SparseVector{{letter.index, Rational(1)}});
        std::map<Word, Rational> next;
        for (const auto& [w, c] : acc)
          for (const auto& [i, x] : image) {
            Word y = w;
            y.push_back(tw.letter_pos.at(Basis{letter.degree, i}));
            next[y] += c * x;
          }
        acc = std::move(next);
      }
      for (const auto& [w, c] : acc)
        if (c != 0) m.add(tw.index.at(w).index, col, c);
    }
    comps.emplace(n, std::move(m));
  }
  return make_dga_map(source, target, std::move(comps));
}

// ---------------------------------------------------------------------------
// Yoneda

namespace {

void require_enumerated(const Category& cat) {
  if (!cat.enumerated())
    throw Error(ErrorKind::BackendUnsupported, "Yoneda complexes need an enumerated category, got " + cat.name());
}

std::size_t position(const std::vector<Morphism>& list, const Morphism& f) {
  auto it = std::find(list.begin(), list.end(), f);
  if (it == list.end()) throw Error(ErrorKind::InvalidCategory, "composite " + f.id + " missing from its hom-set");
  return static_cast<std::size_t>(it - list.begin());
}

}  // namespace

ChainComplex yoneda_object(const Category& cat, const Object& m, const Object& n) {
  require_enumerated(cat);
  return ChainComplex::concentrated(0, cat.hom(m, n).size());
}

ChainMap yoneda_postcompose(const Category& cat, const Object& m, const Morphism& g) {
  require_enumerated(cat);
  auto from = cat.hom(m, g.src), to = cat.hom(m, g.tgt);
  Matrix c(to.size(), from.size());
  for (std::size_t j = 0; j < from.size(); ++j) c.set(position(to, cat.compose(g, from[j])), j, 1);
  return ChainMap(ChainComplex::concentrated(0, from.size()), ChainComplex::concentrated(0, to.size()), {{0, c}});
}

ChainMap yoneda_precompose(const Category& cat, const Morphism& f, const Object& x) {
  require_enumerated(cat);
  auto from = cat.hom(f.tgt, x), to = cat.hom(f.src, x);
  Matrix c(to.size(), from.size());
  for (std::size_t j = 0; j < from.size(); ++j) c.set(position(to, cat.compose(from[j], f)), j, 1);
  return ChainMap(ChainComplex::concentrated(0, from.size()), ChainComplex::concentrated(0, to.size()), {{0, c}});
}

}  // namespace aqft
