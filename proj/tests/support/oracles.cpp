#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace oracle {

using namespace aqft;

Rational random_rational(Rng& rng, long bound) {
  std::uniform_int_distribution<long> num(-bound, bound), den(1, 2);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------
// Random categories

namespace {

struct Arrow {
  std::size_t src, tgt;
  std::vector<std::size_t> table;
  bool operator<(const Arrow& o) const { return std::tie(src, tgt, table) < std::tie(o.src, o.tgt, o.table); }
  bool operator==(const Arrow& o) const { return src == o.src && tgt == o.tgt && table == o.table; }
};

}  // namespace

EnumeratedPtr random_category(Rng& rng, std::size_t max_objects, std::size_t max_morphisms) {
  std::uniform_int_distribution<std::size_t> nobj(1, std::min<std::size_t>(max_objects, 5));
  std::uniform_int_distribution<std::size_t> size(1, 3);
  const std::size_t k = nobj(rng);
  std::vector<std::size_t> sizes(k);
  for (auto& s : sizes) s = size(rng);

  std::vector<Arrow> arrows;
  for (std::size_t o = 0; o < k; ++o) {
    Arrow id{o, o, std::vector<std::size_t>(sizes[o])};
    std::iota(id.table.begin(), id.table.end(), std::size_t{0});
    arrows.push_back(id);
  }
  std::uniform_int_distribution<std::size_t> ngen(0, 5), pick(0, k - 1);
  const std::size_t gens = ngen(rng);
  for (std::size_t i = 0; i < gens; ++i) {
    Arrow a{pick(rng), pick(rng), {}};
    std::uniform_int_distribution<std::size_t> val(0, sizes[a.tgt] - 1);
    for (std::size_t x = 0; x < sizes[a.src]; ++x) a.table.push_back(val(rng));
    if (std::find(arrows.begin(), arrows.end(), a) == arrows.end()) arrows.push_back(a);
  }
  // close under composition
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t n = arrows.size();
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t f = 0; f < n; ++f) {
        if (arrows[f].tgt != arrows[g].src) continue;
        Arrow c{arrows[f].src, arrows[g].tgt, {}};
        for (auto x : arrows[f].table) c.table.push_back(arrows[g].table[x]);
        if (std::find(arrows.begin(), arrows.end(), c) == arrows.end()) {
          arrows.push_back(c);
          grew = true;
          if (arrows.size() > max_morphisms) return nullptr;
        }
      }
  }
  if (arrows.size() > max_morphisms) return nullptr;

  EnumeratedCategory::Builder b("random");
  for (std::size_t o = 0; o < k; ++o) b.object("X" + std::to_string(o));
  auto name = [&](std::size_t i) { return i < k ? "id_X" + std::to_string(i) : "m" + std::to_string(i - k); };
  for (std::size_t i = k; i < arrows.size(); ++i)
    b.morphism(name(i), "X" + std::to_string(arrows[i].src), "X" + std::to_string(arrows[i].tgt));
  for (std::size_t g = k; g < arrows.size(); ++g)
    for (std::size_t f = k; f < arrows.size(); ++f) {
      if (arrows[f].tgt != arrows[g].src) continue;
      Arrow c{arrows[f].src, arrows[g].tgt, {}};
      for (auto x : arrows[f].table) c.table.push_back(arrows[g].table[x]);
      auto it = std::find(arrows.begin(), arrows.end(), c);
      b.composite(name(g), name(f), name(static_cast<std::size_t>(it - arrows.begin())));
    }
  return b.build();
}

EnumeratedPtr some_category(Rng& rng, std::size_t max_objects, std::size_t max_morphisms) {
  for (;;)
    if (auto c = random_category(rng, max_objects, max_morphisms)) return c;
}

std::set<OrthoRel::Pair> random_seed(const EnumeratedCategory& cat, Rng& rng, std::size_t max_pairs) {
  std::set<OrthoRel::Pair> seed;
  const std::size_t n = cat.morphisms().size();
  std::uniform_int_distribution<std::size_t> count(0, max_pairs), pick(0, n - 1);
  const std::size_t want = count(rng);
  for (std::size_t tries = 0; seed.size() < want && tries < 50; ++tries) {
    std::size_t a = pick(rng), c = pick(rng);
    if (cat.target_index(a) != cat.target_index(c)) continue;
    seed.insert({std::min(a, c), std::max(a, c)});
  }
  return seed;
}

Subcategory random_full_subcategory(const EnumeratedPtr& cat, Rng& rng) {
  const auto& objs = cat->objects();
  std::vector<bool> keep(objs.size());
  std::bernoulli_distribution coin(0.6);
  for (auto&& k : keep) k = coin(rng);
  keep[std::uniform_int_distribution<std::size_t>(0, objs.size() - 1)(rng)] = true;

  EnumeratedCategory::Builder b(cat->name() + "-sub");
  std::map<std::string, std::string> obj_map, mor_map;
  for (std::size_t o = 0; o < objs.size(); ++o)
    if (keep[o]) {
      b.object(objs[o].id);
      b.identity(objs[o].id, cat->morphism(cat->identity_index(o)).id);
      obj_map[objs[o].id] = objs[o].id;
    }
  auto inside = [&](std::size_t m) { return keep[cat->source_index(m)] && keep[cat->target_index(m)]; };
  const std::size_t n = cat->morphisms().size();
  for (std::size_t m = 0; m < n; ++m)
    if (inside(m) && !cat->is_identity(m)) {
      const auto& f = cat->morphism(m);
      b.morphism(f.id, f.src.id, f.tgt.id);
      mor_map[f.id] = f.id;
    }
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) {
      if (!inside(f) || !inside(g) || cat->is_identity(f) || cat->is_identity(g)) continue;
      if (auto gf = cat->compose_index(g, f)) b.composite(cat->morphism(g).id, cat->morphism(f).id, cat->morphism(*gf).id);
    }
  auto sub = b.build();
  return {sub, functor_from_tables("inclusion", sub, cat, obj_map, mor_map)};
}

Functor collapse_functor(const EnumeratedPtr& cat) {
  auto pt = make_terminal_category();
  std::map<std::string, std::string> obj_map, mor_map;
  for (const auto& x : cat->objects()) obj_map[x.id] = "*";
  for (const auto& f : cat->morphisms()) mor_map[f.id] = pt->morphisms().front().id;
  return functor_from_tables("collapse", cat, pt, obj_map, mor_map);
}

// ---------------------------------------------------------------------------
// Orthogonality

OrderedPairs ordered(const std::set<OrthoRel::Pair>& unordered) {
  OrderedPairs out;
  for (const auto& [a, b] : unordered) {
    out.insert({a, b});
    out.insert({b, a});
  }
  return out;
}

OrderedPairs ordered(const OrthoRel& rel) { return ordered(rel.pairs()); }

OrderedPairs saturate(const EnumeratedCategory& cat, const OrderedPairs& seed) {
  OrderedPairs s = seed;
  const std::size_t n = cat.morphisms().size();
  for (bool grew = true; grew;) {
    grew = false;
    OrderedPairs next = s;
    for (const auto& [a, b] : s) {
      next.insert({b, a});
      for (std::size_t g = 0; g < n; ++g) {
        auto ga = cat.compose_index(g, a);
        auto gb = cat.compose_index(g, b);
        if (ga && gb) next.insert({*ga, *gb});
      }
      for (std::size_t h = 0; h < n; ++h) {
        if (auto ah = cat.compose_index(a, h)) next.insert({*ah, b});
        if (auto bh = cat.compose_index(b, h)) next.insert({a, *bh});
      }
    }
    if (next.size() != s.size()) {
      grew = true;
      s = std::move(next);
    }
  }
  return s;
}

bool is_closed(const EnumeratedCategory& cat, const OrderedPairs& rel) {
  const std::size_t n = cat.morphisms().size();
  for (const auto& [a, b] : rel) {
    if (cat.target_index(a) != cat.target_index(b)) return false;
    if (!rel.count({b, a})) return false;
    for (std::size_t g = 0; g < n; ++g) {
      auto ga = cat.compose_index(g, a);
      auto gb = cat.compose_index(g, b);
      if (ga && gb && !rel.count({*ga, *gb})) return false;
    }
    for (std::size_t h = 0; h < n; ++h) {
      if (auto ah = cat.compose_index(a, h); ah && !rel.count({*ah, b})) return false;
      if (auto bh = cat.compose_index(b, h); bh && !rel.count({a, *bh})) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Operad

namespace {

std::vector<std::size_t> arrangement(const Permutation& perm) {
  // slot σ(i) carries label i
  std::vector<std::size_t> w(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) w[perm[i]] = i;
  return w;
}

}  // namespace

bool bfs_equal(const OperadOp& a, const OperadOp& b, const EnumeratedCategory& cat, const OrderedPairs& rel) {
  if (!(a.target == b.target) || a.morphisms.size() != b.morphisms.size()) return false;
  for (std::size_t i = 0; i < a.morphisms.size(); ++i)
    if (!(a.morphisms[i] == b.morphisms[i])) return false;
  std::vector<std::size_t> idx;
  for (const auto& f : a.morphisms) idx.push_back(cat.morphism_index(f));
  const auto start = arrangement(a.perm), goal = arrangement(b.perm);
  std::set<std::vector<std::size_t>> seen{start};
  std::deque<std::vector<std::size_t>> queue{start};
  while (!queue.empty()) {
    auto w = queue.front();
    queue.pop_front();
    if (w == goal) return true;
    for (std::size_t p = 0; p + 1 < w.size(); ++p) {
      if (!rel.count({idx[w[p]], idx[w[p + 1]]})) continue;
      auto v = w;
      std::swap(v[p], v[p + 1]);
      if (seen.insert(v).second) queue.push_back(v);
    }
  }
  return false;
}

std::vector<std::size_t> bfs_classes(const std::vector<std::size_t>& idx, const OrderedPairs& rel,
                                     std::vector<Permutation>& perms) {
  const std::size_t n = idx.size();
  perms.clear();
  Permutation p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<std::size_t>, std::size_t> by_word;
  for (std::size_t i = 0; i < perms.size(); ++i) by_word[arrangement(perms[i])] = i;

  std::vector<std::size_t> cls(perms.size(), SIZE_MAX);
  std::size_t next = 0;
  for (std::size_t s = 0; s < perms.size(); ++s) {
    if (cls[s] != SIZE_MAX) continue;
    cls[s] = next;
    std::deque<std::vector<std::size_t>> queue{arrangement(perms[s])};
    while (!queue.empty()) {
      auto w = queue.front();
      queue.pop_front();
      for (std::size_t q = 0; q + 1 < n; ++q) {
        if (!rel.count({idx[w[q]], idx[w[q + 1]]})) continue;
        auto v = w;
        std::swap(v[q], v[q + 1]);
        std::size_t id = by_word.at(v);
        if (cls[id] == SIZE_MAX) {
          cls[id] = next;
          queue.push_back(v);
        }
      }
    }
    ++next;
  }
  return cls;
}

Permutation random_permutation(std::size_t n, Rng& rng) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    std::uniform_int_distribution<std::size_t> j(0, i - 1);
    std::swap(p[i - 1], p[j(rng)]);
  }
  return p;
}

std::optional<OperadOp> random_operation(const EnumeratedCategory& cat, const Object& target, std::size_t n,
                                         Rng& rng) {
  auto into = cat.morphisms_into(cat.object_index(target));
  if (into.empty() && n > 0) return std::nullopt;
  std::vector<Morphism> fs;
  for (std::size_t i = 0; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, into.size() - 1);
    fs.push_back(cat.morphism(into[pick(rng)]));
  }
  return make_operation(target, random_permutation(n, rng), fs);
}

namespace {

OperadOp random_op_into(const EnumeratedCategory& cat, const Object& target, std::size_t max_arity, Rng& rng) {
  std::uniform_int_distribution<std::size_t> arity(0, max_arity);
  return *random_operation(cat, target, arity(rng), rng);
}

std::vector<std::size_t> offsets(const std::vector<OperadOp>& inners) {
  std::vector<std::size_t> off{0};
  for (const auto& op : inners) off.push_back(off.back() + op.arity());
  return off;
}

}  // namespace

OperadLaws check_operad_laws(const EnumeratedCategory& cat, const OrthoRel& rel, Rng& rng, std::size_t max_arity) {
  OperadLaws out;
  std::uniform_int_distribution<std::size_t> pick(0, cat.objects().size() - 1);
  const Object target = cat.objects()[pick(rng)];
  const OperadOp theta = random_op_into(cat, target, max_arity, rng);
  std::vector<OperadOp> phi;
  for (const auto& m : theta.domain) phi.push_back(random_op_into(cat, m, max_arity, rng));
  std::vector<std::vector<OperadOp>> psi;
  std::vector<OperadOp> psi_flat;
  for (const auto& p : phi) {
    psi.emplace_back();
    for (const auto& m : p.domain) psi.back().push_back(random_op_into(cat, m, 2, rng));
    psi_flat.insert(psi_flat.end(), psi.back().begin(), psi.back().end());
  }

  // associativity
  {
    auto lhs = op_compose(cat, op_compose(cat, theta, phi), psi_flat);
    std::vector<OperadOp> mid;
    for (std::size_t i = 0; i < phi.size(); ++i) mid.push_back(op_compose(cat, phi[i], psi[i]));
    auto rhs = op_compose(cat, theta, mid);
    out.associativity = op_equal(lhs, rhs, rel);
  }
  // unitality
  {
    std::vector<OperadOp> units;
    for (const auto& m : theta.domain) units.push_back(operad_unit(cat, m));
    out.right_unit = op_equal(op_compose(cat, theta, units), theta, rel);
    out.left_unit = op_equal(op_compose(cat, operad_unit(cat, target), {theta}), theta, rel);
  }
  // θσ ∘ (φ_1..φ_n) = (θ ∘ (φ_{σ^{-1}(1)}..φ_{σ^{-1}(n)}))·τ with τ(flat_lhs(i, j)) = flat_rhs(σ(i), j)
  {
    const std::size_t n = theta.arity();
    const Permutation sigma = random_permutation(n, rng);
    const OperadOp theta_s = op_permute(theta, sigma);
    std::vector<OperadOp> lhs_in;  // input i must target domain σ(i) of θ
    for (std::size_t i = 0; i < n; ++i) lhs_in.push_back(phi[sigma[i]]);
    std::vector<OperadOp> rhs_in(n);
    for (std::size_t i = 0; i < n; ++i) rhs_in[sigma[i]] = lhs_in[i];
    auto lhs = op_compose(cat, theta_s, lhs_in);
    auto rhs = op_compose(cat, theta, rhs_in);
    auto lo = offsets(lhs_in), ro = offsets(rhs_in);
    Permutation tau(lo.back());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < lhs_in[i].arity(); ++j) tau[lo[i] + j] = ro[sigma[i]] + j;
    out.equivariance_outer = op_equal(lhs, op_permute(rhs, tau), rel);
  }
  // θ ∘ (φ_i τ_i) = (θ ∘ φ)·τ with τ(flat(i, j)) = flat(i, τ_i(j))
  {
    std::vector<OperadOp> permuted;
    std::vector<Permutation> taus;
    for (const auto& p : phi) {
      taus.push_back(random_permutation(p.arity(), rng));
      permuted.push_back(op_permute(p, taus.back()));
    }
    auto lhs = op_compose(cat, theta, permuted);
    auto rhs = op_compose(cat, theta, phi);
    auto off = offsets(phi);
    Permutation tau(off.back());
    for (std::size_t i = 0; i < phi.size(); ++i)
      for (std::size_t j = 0; j < phi[i].arity(); ++j) tau[off[i] + j] = off[i] + taus[i][j];
    out.equivariance_inner = op_equal(lhs, op_permute(rhs, tau), rel);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Linear algebra

Dense to_dense(const Matrix& m) {
  Dense d(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i)) d[i][j] = v;
  return d;
}

Matrix from_dense(const Dense& m, std::size_t cols) { return Matrix::from_rows(m, cols); }

std::size_t dense_rank(Dense m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

std::optional<Dense> dense_inverse(Dense m) {
  const std::size_t n = m.size();
  Dense inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    const Rational s = 1 / m[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] -= f * m[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

std::map<int, std::size_t> dense_homology(const ChainComplex& x) {
  std::map<int, std::size_t> h;
  for (int n : x.support()) {
    const std::size_t rk_out = dense_rank(to_dense(x.differential(n)));
    const std::size_t rk_in = dense_rank(to_dense(x.differential(n + 1)));
    h[n] = x.dim(n) - rk_out - rk_in;
  }
  return h;
}

ChainComplex mapping_cone(const ChainMap& f) {
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  std::set<int> degrees;
  for (int n : x.support()) degrees.insert(n + 1);
  for (int n : y.support()) degrees.insert(n);
  std::map<int, std::size_t> dims;
  for (int n : degrees) dims[n] = x.dim(n - 1) + y.dim(n);
  std::map<int, Matrix> d;
  for (int n : degrees) {
    const std::size_t xs = x.dim(n - 1), ys = y.dim(n);
    const std::size_t xt = x.dim(n - 2), yt = y.dim(n - 1);
    Matrix m(xt + yt, xs + ys);
    Matrix dx = x.differential(n - 1), fy = f.component(n - 1), dy = y.differential(n);
    for (std::size_t i = 0; i < xt; ++i)
      for (const auto& [j, v] : dx.row(i)) m.set(i, j, -v);
    for (std::size_t i = 0; i < yt; ++i) {
      for (const auto& [j, v] : fy.row(i)) m.set(xt + i, j, v);
      for (const auto& [j, v] : dy.row(i)) m.set(xt + i, xs + j, v);
    }
    if (!m.is_zero()) d.emplace(n, m);
  }
  return ChainComplex(dims, d);
}

bool cone_quasi_iso(const ChainMap& f) {
  for (const auto& [n, h] : dense_homology(mapping_cone(f)))
    if (h != 0) return false;
  return true;
}

namespace {

struct Slot {
  std::size_t piece;
  bool top;  // for disks: the upper element
};

std::map<int, std::vector<Slot>> slots(const std::vector<std::pair<int, bool>>& pieces) {
  std::map<int, std::vector<Slot>> s;
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    auto [deg, disk] = pieces[p];
    s[deg].push_back({p, true});
    if (disk) s[deg - 1].push_back({p, false});
  }
  return s;
}

Dense random_invertible(std::size_t n, Rng& rng) {
  for (;;) {
    Dense m(n, std::vector<Rational>(n));
    for (auto& row : m)
      for (auto& x : row) x = random_rational(rng, 2);
    if (dense_inverse(m)) return m;
  }
}

Dense mul(const Dense& a, const Dense& b, std::size_t inner, std::size_t cols) {
  Dense c(a.size(), std::vector<Rational>(cols));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

}  // namespace

RandomComplex random_complex(Rng& rng, int lo, int hi, std::size_t max_dim) {
  RandomComplex out;
  std::uniform_int_distribution<int> count(0, 7), deg(lo, hi), coin(0, 2);
  std::map<int, std::size_t> dims;
  const int want = count(rng);
  for (int i = 0; i < want; ++i) {
    const bool disk = coin(rng) == 0;
    const int n = deg(rng);
    if (disk && n - 1 < lo) continue;
    if (dims[n] + 1 > max_dim || (disk && dims[n - 1] + 1 > max_dim)) continue;
    ++dims[n];
    if (disk) ++dims[n - 1];
    out.pieces.push_back({n, disk});
  }
  auto sl = slots(out.pieces);
  std::map<int, std::size_t> d_dims;
  for (const auto& [n, s] : sl) {
    d_dims[n] = s.size();
    out.basis_change[n] = random_invertible(s.size(), rng);
  }
  // standard differential, then conjugate: d_new = B_{n-1}^{-1} d B_n
  std::map<int, Matrix> d;
  for (const auto& [n, s] : sl) {
    if (!sl.count(n - 1)) continue;
    const auto& below = sl.at(n - 1);
    Dense std_d(below.size(), std::vector<Rational>(s.size()));
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (!s[j].top || !out.pieces[s[j].piece].second) continue;
      for (std::size_t i = 0; i < below.size(); ++i)
        if (below[i].piece == s[j].piece && !below[i].top) std_d[i][j] = 1;
    }
    Dense binv = *dense_inverse(out.basis_change.at(n - 1));
    Dense dn = mul(mul(binv, std_d, below.size(), s.size()), out.basis_change.at(n), s.size(), s.size());
    d.emplace(n, from_dense(dn, s.size()));
  }
  out.complex = ChainComplex(d_dims, d);
  return out;
}

ChainMap random_chain_map(const RandomComplex& x, const RandomComplex& y, Rng& rng) {
  auto sx = slots(x.pieces), sy = slots(y.pieces);
  std::uniform_int_distribution<int> coin(0, 2);
  // per (X piece, Y piece) scalar
  std::map<std::pair<std::size_t, std::size_t>, Rational> scalar;
  for (std::size_t p = 0; p < x.pieces.size(); ++p)
    for (std::size_t q = 0; q < y.pieces.size(); ++q) {
      auto [dp, diskp] = x.pieces[p];
      auto [dq, diskq] = y.pieces[q];
      const bool same = dp == dq && diskp == diskq;
      const bool point_to_bottom = !diskp && diskq && dq - 1 == dp;
      const bool top_to_point = diskp && !diskq && dp == dq;
      if ((same || point_to_bottom || top_to_point) && coin(rng) != 0) scalar[{p, q}] = random_rational(rng, 2);
    }
  std::map<int, Matrix> comps;
  for (const auto& [n, xs] : sx) {
    if (!sy.count(n)) continue;
    const auto& ys = sy.at(n);
    Dense f(ys.size(), std::vector<Rational>(xs.size()));
    for (std::size_t j = 0; j < xs.size(); ++j)
      for (std::size_t i = 0; i < ys.size(); ++i) {
        auto it = scalar.find({xs[j].piece, ys[i].piece});
        if (it == scalar.end()) continue;
        const bool diskp = x.pieces[xs[j].piece].second, diskq = y.pieces[ys[i].piece].second;
        bool hit = false;
        if (diskp == diskq) hit = xs[j].top == ys[i].top;  // same shape, slot to slot
        else if (!diskp) hit = !ys[i].top;                 // point to bottom of a disk
        else hit = xs[j].top;                              // top of a disk to a point
        if (hit) f[i][j] = it->second;
      }
    Dense binv = *dense_inverse(y.basis_change.at(n));
    Dense fn = mul(mul(binv, f, ys.size(), xs.size()), x.basis_change.at(n), xs.size(), xs.size());
    comps.emplace(n, from_dense(fn, xs.size()));
  }
  return ChainMap(x.complex, y.complex, comps);
}

}  // namespace oracle
