#include "aqft/bar.hpp"

#include "aqft/errors.hpp"

#include <algorithm>
#include <functional>

namespace aqft {

namespace {

/// Preorder encoding: a word is -1, its children, -2; a leaf is its basis index >= 0.
using Code = std::vector<int>;
using Comb = std::map<Code, Rational>;

struct Node {
  int leaf = -1;
  std::vector<Node> kids;
  bool is_leaf() const { return leaf >= 0; }
};

void encode(const Node& n, Code& out) {
  if (n.is_leaf()) {
    out.push_back(n.leaf);
    return;
  }
  out.push_back(-1);
  for (const auto& c : n.kids) encode(c, out);
  out.push_back(-2);
}

Code encode(const Node& n) {
  Code c;
  encode(n, c);
  return c;
}

Node decode(const Code& c, std::size_t& pos) {
  Node n;
  if (c[pos] >= 0) {
    n.leaf = c[pos++];
    return n;
  }
  ++pos;  // -1
  while (c[pos] != -2) n.kids.push_back(decode(c, pos));
  ++pos;
  return n;
}

Node decode(const Code& c) {
  std::size_t pos = 0;
  return decode(c, pos);
}

std::size_t leaves(const Node& n) {
  if (n.is_leaf()) return 1;
  if (n.kids.empty()) return 1;
  std::size_t s = 0;
  for (const auto& c : n.kids) s += leaves(c);
  return s;
}

void add(Comb& acc, const Code& c, const Rational& v) {
  if (v == 0) return;
  auto [it, fresh] = acc.emplace(c, v);
  if (!fresh) {
    it->second += v;
    if (it->second == 0) acc.erase(it);
  }
}

void add(Comb& acc, const Comb& x, const Rational& s) {
  for (const auto& [c, v] : x) add(acc, c, s * v);
}

using Terms = std::vector<std::pair<Node, Rational>>;

}  // namespace

struct BarObject::Impl {
  DgAlgebraPtr a;
  std::size_t depth = 0;
  std::size_t weight = 0;
  int qmin = 0;
  std::vector<Basis> letters;
  std::map<Basis, int> letter_index;

  // per k = 0..depth
  std::vector<std::map<int, std::vector<Code>>> trees;
  std::vector<std::map<Code, std::pair<int, std::size_t>>> index;
  std::vector<std::map<int, std::vector<Code>>> nondeg;
  std::vector<std::map<Code, std::size_t>> nondeg_index;

  int degree(const Code& c) const {
    int d = 0;
    for (int v : c)
      if (v >= 0) d += letters[v].degree;
    return d;
  }

  // -- enumeration --------------------------------------------------------

  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<Node, std::size_t>>> memo;

  /// Nodes of height h (0 = leaf of A) with at most `budget` leaves.
  const std::vector<std::pair<Node, std::size_t>>& generate(std::size_t h, std::size_t budget) {
    auto key = std::make_pair(h, budget);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<std::pair<Node, std::size_t>> out;
    if (budget >= 1) {
      if (h == 0) {
        for (std::size_t i = 0; i < letters.size(); ++i) out.push_back({Node{static_cast<int>(i), {}}, 1});
      } else {
        out.push_back({Node{}, 1});
        const auto children = generate(h - 1, budget);
        std::function<void(Node&, std::size_t)> extend = [&](Node& prefix, std::size_t used) {
          for (const auto& [c, l] : children) {
            if (used + l > budget) continue;
            prefix.kids.push_back(c);
            out.push_back({prefix, used + l});
            extend(prefix, used + l);
            prefix.kids.pop_back();
          }
        };
        Node root;
        extend(root, 0);
      }
    }
    return memo.emplace(key, std::move(out)).first->second;
  }

  bool degenerate(const Node& x, std::size_t k) const {
    for (std::size_t j = 0; j < k; ++j) {
      bool all_singletons = true;
      std::function<void(const Node&, std::size_t)> visit = [&](const Node& n, std::size_t level) {
        if (!all_singletons) return;
        if (level == j + 1) {
          if (n.kids.size() != 1) all_singletons = false;
          return;
        }
        for (const auto& c : n.kids) visit(c, level + 1);
      };
      visit(x, 0);
      if (all_singletons) return true;
    }
    return false;
  }

  // -- structure maps -----------------------------------------------------

  Terms multiply_leaves(const Node& word) const {
    GradedVector p{{0, a->unit()}};
    if (a->unit().empty()) p.clear();
    for (const auto& c : word.kids) p = a->multiply(p, basis_vector(letters[c.leaf]));
    Terms out;
    for (const auto& [deg, vec] : p)
      for (const auto& [i, v] : vec) out.push_back({Node{letter_index.at(Basis{deg, i}), {}}, v});
    return out;
  }

  Terms face(const Node& n, std::size_t level, std::size_t i, std::size_t k) const {
    if (level == i) {
      if (i < k) {
        Node m;
        for (const auto& c : n.kids)
          for (const auto& g : c.kids) m.kids.push_back(g);
        return {{std::move(m), Rational(1)}};
      }
      return multiply_leaves(n);
    }
    Terms acc{{Node{}, Rational(1)}};
    for (const auto& c : n.kids) {
      Terms fc = face(c, level + 1, i, k);
      Terms next;
      for (const auto& [x, cx] : acc)
        for (const auto& [y, cy] : fc) {
          Node z = x;
          z.kids.push_back(y);
          next.push_back({std::move(z), cx * cy});
        }
      acc = std::move(next);
      if (acc.empty()) break;
    }
    return acc;
  }

  /// d_i on a tree of X_k (k >= 0).
  Comb face(const Code& x, std::size_t k, std::size_t i) const {
    Comb out;
    for (const auto& [n, v] : face(decode(x), 0, i, k)) add(out, encode(n), v);
    return out;
  }

  Node degeneracy(const Node& n, std::size_t level, std::size_t j) const {
    Node m;
    if (level == j) {
      for (const auto& c : n.kids) m.kids.push_back(Node{-1, {c}});
      return m;
    }
    for (const auto& c : n.kids) m.kids.push_back(degeneracy(c, level + 1, j));
    return m;
  }

  Code degeneracy(const Code& x, std::size_t j) const { return encode(degeneracy(decode(x), 0, j)); }

  Code extra(const Code& x) const { return encode(Node{-1, {decode(x)}}); }

  /// Internal differential, Leibniz over the leaves in order with Koszul signs.
  Comb d(const Code& x) const {
    Comb out;
    int before = 0;
    for (std::size_t p = 0; p < x.size(); ++p) {
      if (x[p] < 0) continue;
      const Basis& b = letters[x[p]];
      SparseVector image = a->complex().differential(b.degree).apply(SparseVector{{b.index, Rational(1)}});
      const Rational sign = before % 2 == 0 ? 1 : -1;
      for (const auto& [i, v] : image) {
        Code y = x;
        y[p] = letter_index.at(Basis{b.degree - 1, i});
        add(out, y, sign * v);
      }
      before += b.degree;
    }
    return out;
  }

  // linear extensions
  template <class F>
  Comb apply(const Comb& x, F f) const {
    Comb out;
    for (const auto& [c, v] : x) add(out, f(c), v);
    return out;
  }

  Comb face(const Comb& x, std::size_t k, std::size_t i) const {
    return apply(x, [&](const Code& c) { return face(c, k, i); });
  }
  Comb degeneracy(const Comb& x, std::size_t j) const {
    return apply(x, [&](const Code& c) { return Comb{{degeneracy(c, j), Rational(1)}}; });
  }
  Comb extra(const Comb& x) const {
    return apply(x, [&](const Code& c) { return Comb{{extra(c), Rational(1)}}; });
  }
  Comb d(const Comb& x) const {
    return apply(x, [&](const Code& c) { return d(c); });
  }

  /// Product in X_k (k >= 0): concatenation of root words.
  Comb product(const Code& x, const Code& y) const {
    Node nx = decode(x), ny = decode(y);
    if (nx.is_leaf()) {  // X_{-1} = A
      Comb out;
      for (const auto& [deg, vec] : a->multiply(basis_vector(letters[nx.leaf]), basis_vector(letters[ny.leaf])))
        for (const auto& [i, v] : vec) add(out, Code{letter_index.at(Basis{deg, i})}, v);
      return out;
    }
    for (const auto& c : ny.kids) nx.kids.push_back(c);
    return Comb{{encode(nx), Rational(1)}};
  }

  Comb product(const Comb& x, const Comb& y) const {
    Comb out;
    for (const auto& [cx, vx] : x)
      for (const auto& [cy, vy] : y) add(out, product(cx, cy), vx * vy);
    return out;
  }
};

BarObject::BarObject(DgAlgebraPtr algebra, std::size_t depth, std::size_t weight) : impl_(std::make_unique<Impl>()) {
  if (depth < 1 || weight < 1)
    throw Error(ErrorKind::TruncationTooSmall, "bar resolution needs depth >= 1 and weight >= 1 (got depth " +
                                                   std::to_string(depth) + ", weight " + std::to_string(weight) + ")");
  Impl& m = *impl_;
  m.a = std::move(algebra);
  m.depth = depth;
  m.weight = weight;
  for (const auto& b : m.a->basis()) {
    m.letter_index.emplace(b, static_cast<int>(m.letters.size()));
    m.letters.push_back(b);
  }
  int lowest = 0;
  for (const auto& b : m.letters) lowest = std::min(lowest, b.degree);
  m.qmin = static_cast<int>(weight) * lowest;

  m.trees.resize(depth + 1);
  m.index.resize(depth + 1);
  m.nondeg.resize(depth + 1);
  m.nondeg_index.resize(depth + 1);
  for (std::size_t k = 0; k <= depth; ++k) {
    for (const auto& [node, l] : m.generate(k + 1, weight)) {
      Code c = encode(node);
      int q = m.degree(c);
      auto& list = m.trees[k][q];
      m.index[k].emplace(c, std::make_pair(q, list.size()));
      list.push_back(c);
      if (!m.degenerate(node, k)) {
        auto& nd = m.nondeg[k][q];
        m.nondeg_index[k].emplace(c, nd.size());
        nd.push_back(c);
      }
    }
  }
  m.memo.clear();
}

BarObject::~BarObject() = default;
BarObject::BarObject(BarObject&&) noexcept = default;
BarObject& BarObject::operator=(BarObject&&) noexcept = default;

std::size_t BarObject::depth() const { return impl_->depth; }
std::size_t BarObject::weight() const { return impl_->weight; }
int BarObject::lowest_degree() const { return impl_->qmin; }
int BarObject::trusted_top() const { return static_cast<int>(impl_->depth) - 1 + impl_->qmin; }

std::map<int, std::size_t> BarObject::level_dims(std::size_t k) const {
  std::map<int, std::size_t> out;
  for (const auto& [q, list] : impl_->trees.at(k)) out.emplace(q, list.size());
  return out;
}

std::map<int, std::size_t> BarObject::normalized_dims(std::size_t k) const {
  std::map<int, std::size_t> out;
  for (const auto& [q, list] : impl_->nondeg.at(k)) out.emplace(q, list.size());
  return out;
}

Report BarObject::check() const {
  const Impl& m = *impl_;
  const std::size_t K = m.depth;
  auto single = [](const Code& c) { return Comb{{c, Rational(1)}}; };
  auto show = [&](const Code& c) {
    std::string s;
    for (int v : c) s += v == -1 ? "[" : v == -2 ? "]" : m.a->label(m.letters[v]);
    return s;
  };

  Verdict closed{"truncation closed", true, {}, std::nullopt, {}};
  Verdict d2{"internal d^2", true, {}, std::nullopt, {}};
  Verdict chain{"faces are chain maps", true, {}, std::nullopt, {}};
  Verdict ff{"face identities", true, {}, std::nullopt, {}};
  Verdict aug{"augmentation", true, {}, std::nullopt, {}};
  Verdict fs{"face-degeneracy identities", true, {}, std::nullopt, {}};
  Verdict ss{"degeneracy identities", true, {}, std::nullopt, {}};
  Verdict ex{"extra degeneracy", true, {}, std::nullopt, {}};
  Verdict mult{"faces multiplicative", true, {}, std::nullopt, {}};
  mult.detail = "on pairs with at most " + std::to_string(m.weight) + " leaves in total";

  auto fail = [&](Verdict& v, const std::string& what) {
    if (!v.passed) return;
    v.passed = false;
    v.witness = what;
  };
  auto in_level = [&](const Comb& x, std::size_t k) {
    for (const auto& [c, v] : x)
      if (!m.index[k].count(c)) return false;
    return true;
  };

  for (std::size_t k = 0; k <= K; ++k) {
    for (const auto& [q, list] : m.trees[k])
      for (const Code& x : list) {
        const Comb X = single(x);
        const std::string at = "X_" + std::to_string(k) + " " + show(x);

        Comb dx = m.d(x);
        ++d2.coverage.checked;
        if (!m.d(dx).empty()) fail(d2, at);
        ++closed.coverage.checked;
        if (!in_level(dx, k)) fail(closed, "d " + at);

        for (std::size_t i = 0; i <= k; ++i) {
          Comb fx = m.face(x, k, i);
          ++closed.coverage.checked;
          if (k > 0 && !in_level(fx, k - 1)) fail(closed, "d_" + std::to_string(i) + " " + at);
          ++chain.coverage.checked;
          if (m.face(dx, k, i) != m.d(fx)) fail(chain, "d_" + std::to_string(i) + " " + at);
        }

        if (k >= 1)
          for (std::size_t j = 1; j <= k; ++j)
            for (std::size_t i = 0; i < j; ++i) {
              Verdict& v = k == 1 ? aug : ff;
              ++v.coverage.checked;
              if (m.face(m.face(X, k, j), k - 1, i) != m.face(m.face(X, k, i), k - 1, j - 1))
                fail(v, "d_" + std::to_string(i) + " d_" + std::to_string(j) + " " + at);
            }

        if (k + 1 <= K)
          for (std::size_t j = 0; j <= k; ++j) {
            Comb sx = m.degeneracy(X, j);
            ++closed.coverage.checked;
            if (!in_level(sx, k + 1)) fail(closed, "s_" + std::to_string(j) + " " + at);
            for (std::size_t i = 0; i <= k + 1; ++i) {
              ++fs.coverage.checked;
              Comb lhs = m.face(sx, k + 1, i);
              Comb rhs;
              if (i < j)
                rhs = m.degeneracy(m.face(X, k, i), j - 1);
              else if (i == j || i == j + 1)
                rhs = X;
              else
                rhs = m.degeneracy(m.face(X, k, i - 1), j);
              if (lhs != rhs) fail(fs, "d_" + std::to_string(i) + " s_" + std::to_string(j) + " " + at);
            }
            for (std::size_t i = 0; i <= j; ++i) {
              ++ss.coverage.checked;
              if (m.degeneracy(m.degeneracy(X, j), i) != m.degeneracy(m.degeneracy(X, i), j + 1))
                fail(ss, "s_" + std::to_string(i) + " s_" + std::to_string(j) + " " + at);
            }
          }

        Comb ext = m.extra(X);
        ++ex.coverage.checked;
        if (m.face(ext, k + 1, 0) != X) fail(ex, "d_0 s_-1 " + at);
        for (std::size_t i = 0; i <= k; ++i) {
          ++ex.coverage.checked;
          if (m.face(ext, k + 1, i + 1) != m.extra(m.face(X, k, i)))
            fail(ex, "d_" + std::to_string(i + 1) + " s_-1 " + at);
        }
      }

    // multiplicativity of every face (the augmentation for k = 0)
    std::vector<std::pair<Code, std::size_t>> small;
    for (const auto& [q, list] : m.trees[k])
      for (const Code& x : list) {
        std::size_t l = leaves(decode(x));
        if (l < m.weight) small.emplace_back(x, l);
      }
    for (const auto& [x, lx] : small)
      for (const auto& [y, ly] : small) {
        if (lx + ly > m.weight) continue;
        Comb xy = m.product(x, y);
        for (std::size_t i = 0; i <= k; ++i) {
          ++mult.coverage.checked;
          if (m.face(xy, k, i) != m.product(m.face(x, k, i), m.face(y, k, i)))
            fail(mult, "d_" + std::to_string(i) + " on X_" + std::to_string(k) + " (" + show(x) + ", " + show(y) + ")");
        }
      }
  }

  Report r;
  for (auto* v : {&closed, &d2, &chain, &ff, &aug, &fs, &ss, &ex, &mult}) r.add(*v);
  return r;
}

std::pair<ChainComplex, ChainMap> BarObject::total(int lo, int hi) const {
  const Impl& m = *impl_;
  const int K = static_cast<int>(m.depth);
  // basis of Tot_n: blocks k = 0..K of nondegenerate trees of internal degree n - k
  auto offsets = [&](int n) {
    std::vector<std::size_t> off(K + 2, 0);
    for (int k = 0; k <= K; ++k) {
      auto it = m.nondeg[k].find(n - k);
      off[k + 1] = off[k] + (it == m.nondeg[k].end() ? 0 : it->second.size());
    }
    return off;
  };
  std::map<int, std::vector<std::size_t>> off;
  std::map<int, std::size_t> dims, adims;
  for (int n = lo - 1; n <= hi + 1; ++n) {
    off[n] = offsets(n);
    dims[n] = off[n].back();
    adims[n] = m.a->complex().dim(n);
  }

  std::map<int, Matrix> diff, adiff, aug;
  for (int n = lo; n <= hi + 1; ++n) {
    Matrix dn(dims[n - 1], dims[n]);
    for (int k = 0; k <= K; ++k) {
      auto it = m.nondeg[k].find(n - k);
      if (it == m.nondeg[k].end()) continue;
      for (std::size_t t = 0; t < it->second.size(); ++t) {
        const Code& x = it->second[t];
        const std::size_t col = off[n][k] + t;
        if (k >= 1) {
          Comb boundary;
          for (int i = 0; i <= k; ++i) add(boundary, m.face(x, k, i), i % 2 == 0 ? 1 : -1);
          for (const auto& [c, v] : boundary) {
            auto pos = m.nondeg_index[k - 1].find(c);
            if (pos != m.nondeg_index[k - 1].end()) dn.add(off[n - 1][k - 1] + pos->second, col, v);
          }
        }
        const Rational sign = k % 2 == 0 ? 1 : -1;
        for (const auto& [c, v] : m.d(x)) {
          auto pos = m.nondeg_index[k].find(c);
          if (pos != m.nondeg_index[k].end()) dn.add(off[n - 1][k] + pos->second, col, sign * v);
        }
      }
    }
    diff.emplace(n, std::move(dn));
    adiff.emplace(n, m.a->complex().differential(n));
  }
  for (int n = lo - 1; n <= hi + 1; ++n) {
    Matrix e(adims[n], dims[n]);
    auto it = m.nondeg[0].find(n);
    if (it != m.nondeg[0].end())
      for (std::size_t t = 0; t < it->second.size(); ++t)
        for (const auto& [c, v] : m.face(it->second[t], 0, 0)) e.add(m.letters[c.front()].index, off[n][0] + t, v);
    aug.emplace(n, std::move(e));
  }
  ChainComplex tot(dims, std::move(diff));
  ChainComplex target(adims, std::move(adiff));
  ChainMap eps(tot, target, std::move(aug));
  return {std::move(tot), std::move(eps)};
}

BarResolution bar_truncated(const AqftModel& theory, std::size_t depth, std::size_t weight) {
  if (!theory.base.rel.is_empty_relation())
    throw Error(ErrorKind::BackendUnsupported, "bar resolution needs empty orthogonality");
  auto cat = as_enumerated(theory.base.cat, "bar resolution");
  if (depth < 1 || weight < 1)
    throw Error(ErrorKind::TruncationTooSmall, "bar resolution needs depth >= 1 and weight >= 1");
  BarResolution res{theory.name, depth, weight, {}};
  std::map<const DgAlgebra*, std::shared_ptr<const BarObject>> cache;
  for (const auto& x : cat->objects()) {
    DgAlgebraPtr a = theory.algebra(x);
    auto it = cache.find(a.get());
    if (it == cache.end()) it = cache.emplace(a.get(), std::make_shared<const BarObject>(a, depth, weight)).first;
    res.objects.emplace_back(x.id, it->second);
  }
  return res;
}

Report check_simplicial(const BarResolution& res) {
  Report r;
  std::map<const BarObject*, std::string> done;
  for (const auto& [id, obj] : res.objects) {
    if (done.count(obj.get())) continue;
    done.emplace(obj.get(), id);
    r.append(obj->check(), id + ": ");
  }
  return r;
}

bool TotResult::quasi_iso() const {
  return std::all_of(components.begin(), components.end(), [](const TotComponent& c) { return c.verdict.quasi_iso; });
}

TotResult tot_normalized(const BarResolution& res, int lo, int hi) {
  if (lo > hi) throw Error(ErrorKind::InvalidArgument, "empty degree window");
  TotResult out{lo, hi, {}};
  for (const auto& [id, obj] : res.objects) {
    const int top = obj->trusted_top();
    if (lo > top)
      throw Error(ErrorKind::WindowExceedsTruncation,
                  "window [" + std::to_string(lo) + "," + std::to_string(hi) + "] lies above the trusted top degree " +
                      std::to_string(top) + " at depth " + std::to_string(res.depth));
    TotComponent c;
    c.object = id;
    c.trusted_lo = lo;
    c.trusted_hi = std::min(hi, top);
    auto [tot, eps] = obj->total(lo, hi);
    c.tot = std::move(tot);
    c.augmentation = std::move(eps);
    std::set<int> window;
    for (int n = c.trusted_lo; n <= c.trusted_hi; ++n) window.insert(n);
    c.verdict = is_quasi_iso_in(c.augmentation, window);
    out.components.push_back(std::move(c));
  }
  return out;
}

}  // namespace aqft
