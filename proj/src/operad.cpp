#include "aqft/operad.hpp"

#include "aqft/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace aqft {

Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

bool is_permutation(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  for (auto v : p) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Permutation inverse(const Permutation& p) {
  Permutation q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = i;
  return q;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::ShapeMismatch, "permutations of different sizes");
  Permutation c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

Permutation block_composition(const Permutation& outer, const std::vector<Permutation>& inners) {
  if (outer.size() != inners.size()) throw Error(ErrorKind::ShapeMismatch, "block composition arity mismatch");
  std::vector<std::size_t> offset(inners.size() + 1, 0);
  for (std::size_t i = 0; i < inners.size(); ++i) offset[i + 1] = offset[i] + inners[i].size();
  // word of the composite: outer slots in order, each expanded by its inner word
  Permutation word;
  word.reserve(offset.back());
  Permutation outer_word = inverse(outer);
  for (std::size_t slot = 0; slot < outer.size(); ++slot) {
    std::size_t i = outer_word[slot];
    Permutation inner_word = inverse(inners[i]);
    for (std::size_t l = 0; l < inner_word.size(); ++l) word.push_back(offset[i] + inner_word[l]);
  }
  return inverse(word);
}

Permutation block_permutation(const Permutation& sigma, const std::vector<std::size_t>& sizes_after) {
  if (sigma.size() != sizes_after.size()) throw Error(ErrorKind::ShapeMismatch, "block permutation arity mismatch");
  const std::size_t n = sigma.size();
  Permutation sigma_inv = inverse(sigma);
  std::vector<std::size_t> group_offset(n + 1, 0);
  for (std::size_t m = 0; m < n; ++m) group_offset[m + 1] = group_offset[m] + sizes_after[m];
  // canonical block i has size sizes_after[σ^{-1}(i)] and reads group σ^{-1}(i)
  Permutation rho_inv;
  rho_inv.reserve(group_offset.back());
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t m = sigma_inv[i];
    for (std::size_t t = 0; t < sizes_after[m]; ++t) rho_inv.push_back(group_offset[m] + t);
  }
  return inverse(rho_inv);
}

Permutation block_sum(const std::vector<Permutation>& blocks) {
  Permutation out;
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (auto v : b) out.push_back(offset + v);
    offset += b.size();
  }
  return out;
}

std::string OperadOp::to_string() const {
  std::ostringstream os;
  os << "[perm=";
  for (std::size_t i = 0; i < perm.size(); ++i) os << (i ? " " : "") << perm[i] + 1;
  os << "; ";
  for (std::size_t i = 0; i < morphisms.size(); ++i) os << (i ? "," : "") << morphisms[i].id;
  os << " -> " << target.id << "]";
  return os.str();
}

OperadOp make_operation(const Object& target, const Permutation& perm, const std::vector<Morphism>& morphisms) {
  if (perm.size() != morphisms.size() || !is_permutation(perm))
    throw Error(ErrorKind::ShapeMismatch, "permutation does not match arity " + std::to_string(morphisms.size()));
  OperadOp op;
  op.target = target;
  op.perm = perm;
  op.morphisms = morphisms;
  for (const auto& f : morphisms) {
    if (!(f.tgt == target))
      throw Error(ErrorKind::ShapeMismatch, "morphism " + f.describe() + " does not end at " + target.id);
    op.domain.push_back(f.src);
  }
  return op;
}

OperadOp make_operation(const Permutation& perm, const std::vector<Morphism>& morphisms) {
  if (morphisms.empty()) throw Error(ErrorKind::ShapeMismatch, "arity-0 operation needs an explicit target");
  return make_operation(morphisms.front().tgt, perm, morphisms);
}

OperadOp operad_unit(const Category& cat, const Object& n) {
  return make_operation(n, identity_permutation(1), {cat.identity(n)});
}

bool op_equal(const OperadOp& a, const OperadOp& b, const OrthoRel& rel) {
  if (a.arity() != b.arity() || !(a.target == b.target) || a.domain != b.domain)
    throw Error(ErrorKind::ShapeMismatch, "operations " + a.to_string() + " and " + b.to_string() +
                                              " have different profiles");
  if (a.morphisms != b.morphisms) return false;
  const std::size_t n = a.arity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rel.contains(a.morphisms[i], a.morphisms[j])) continue;
      if ((a.perm[i] < a.perm[j]) != (b.perm[i] < b.perm[j])) return false;
    }
  return true;
}

OperadOp canonical_form(const OperadOp& a, const OrthoRel& rel) {
  std::vector<std::size_t> remaining = a.arrangement();
  std::vector<std::size_t> word;
  word.reserve(remaining.size());
  while (!remaining.empty()) {
    std::size_t best = remaining.size();
    for (std::size_t s = 0; s < remaining.size(); ++s) {
      std::size_t label = remaining[s];
      bool movable = true;
      for (std::size_t t = 0; t < s && movable; ++t)
        movable = rel.contains(a.morphisms[remaining[t]], a.morphisms[label]);
      if (movable && (best == remaining.size() || label < remaining[best])) best = s;
    }
    word.push_back(remaining[best]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
  }
  OperadOp out = a;
  out.perm = inverse(word);
  return out;
}

std::size_t op_hash(const OperadOp& a, const OrthoRel& rel) {
  OperadOp c = canonical_form(a, rel);
  std::size_t h = std::hash<std::string>{}(c.target.id);
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (const auto& f : c.morphisms) mix(std::hash<std::string>{}(f.id));
  for (auto v : c.perm) mix(v);
  return h;
}

OperadOp op_compose(const Category& cat, const OperadOp& outer, const std::vector<OperadOp>& inners) {
  if (inners.size() != outer.arity())
    throw Error(ErrorKind::ShapeMismatch, "outer arity " + std::to_string(outer.arity()) + " but " +
                                              std::to_string(inners.size()) + " inner operations");
  std::vector<Permutation> inner_perms;
  std::vector<Morphism> flat;
  for (std::size_t i = 0; i < inners.size(); ++i) {
    if (!(inners[i].target == outer.domain[i]))
      throw Error(ErrorKind::ShapeMismatch, "inner operation " + std::to_string(i + 1) + " ends at " +
                                                inners[i].target.id + ", expected " + outer.domain[i].id);
    inner_perms.push_back(inners[i].perm);
    for (const auto& g : inners[i].morphisms) flat.push_back(cat.compose(outer.morphisms[i], g));
  }
  return make_operation(outer.target, block_composition(outer.perm, inner_perms), flat);
}

OperadOp op_permute(const OperadOp& a, const Permutation& sigma) {
  if (sigma.size() != a.arity() || !is_permutation(sigma))
    throw Error(ErrorKind::ShapeMismatch, "permutation does not match arity " + std::to_string(a.arity()));
  std::vector<Morphism> f;
  for (std::size_t j = 0; j < sigma.size(); ++j) f.push_back(a.morphisms[sigma[j]]);
  return make_operation(a.target, compose(a.perm, sigma), f);
}

OperadOp op_image(const Functor& f, const OperadOp& a) {
  std::vector<Morphism> images;
  for (const auto& m : a.morphisms) images.push_back(f(m));
  return make_operation(f(a.target), a.perm, images);
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\n");
  return std::string(s.substr(b, e - b + 1));
}

/// Splits on `sep` outside () and [].
std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

}  // namespace

OperadOp parse_operation(const Category& cat, std::string_view text) {
  auto bad = [&](const std::string& why) {
    return Error(ErrorKind::InvalidArgument, "operation '" + std::string(text) + "': " + why);
  };
  std::string s = trim(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw bad("expected [perm=...; ... -> N]");
  s = s.substr(1, s.size() - 2);
  auto semi = s.find(';');
  if (semi == std::string::npos) throw bad("missing ';'");
  std::string head = trim(std::string_view(s).substr(0, semi));
  std::string body = trim(std::string_view(s).substr(semi + 1));
  if (head.rfind("perm=", 0) != 0) throw bad("missing perm=");
  Permutation perm;
  std::istringstream ps(head.substr(5));
  long v;
  while (ps >> v) {
    if (v < 1) throw bad("permutation entries are 1-based");
    perm.push_back(static_cast<std::size_t>(v - 1));
  }
  auto arrow = body.rfind("->");
  if (arrow == std::string::npos) throw bad("missing '->'");
  Object target = cat.parse_object(trim(body.substr(arrow + 2)));
  std::string list = trim(body.substr(0, arrow));
  std::vector<Morphism> morphisms;
  if (!list.empty())
    for (const auto& id : split_top(list, ',')) morphisms.push_back(cat.parse_morphism(id));
  return make_operation(target, perm, morphisms);
}

}  // namespace aqft
