#pragma once

// The AQFT colored operad of an orthogonal category.
//
// Permutations are stored one-line (image sequence, 0-based) and compose as
// functions: (σ τ)(i) = σ(τ(i)). An operation [σ, f] with f = (f_1..f_n)
// reads as the word f σ^{-1}: slot p of the word carries f_{σ^{-1}(p)}, so the
// label i sits at slot σ(i). Block composition of the associative operad is
// chosen to match this reading; the equivariance tests freeze it.

#include "aqft/category.hpp"
#include "aqft/ortho.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace aqft {

using Permutation = std::vector<std::size_t>;

Permutation identity_permutation(std::size_t n);
bool is_permutation(const Permutation& p);
Permutation inverse(const Permutation& p);
/// (a b)(i) = a(b(i)).
Permutation compose(const Permutation& a, const Permutation& b);
/// σ(σ_1, ..., σ_n) in the associative operad.
Permutation block_composition(const Permutation& outer, const std::vector<Permutation>& inners);
/// σ<k_{σ(1)}, ..., k_{σ(n)}>: permutes blocks as σ permutes letters;
/// `sizes_after` lists block sizes in the permuted order.
Permutation block_permutation(const Permutation& sigma, const std::vector<std::size_t>& sizes_after);
/// τ_1 ⊕ ... ⊕ τ_n.
Permutation block_sum(const std::vector<Permutation>& blocks);

struct OperadOp {
  Object target;
  std::vector<Object> domain;
  std::vector<Morphism> morphisms;
  Permutation perm;

  std::size_t arity() const { return morphisms.size(); }
  /// Word arrangement: slot p holds label σ^{-1}(p).
  std::vector<std::size_t> arrangement() const { return inverse(perm); }
  /// "[perm=2 1; f1,f2 -> N]" with 1-based permutation entries.
  std::string to_string() const;
};

/// [σ, f] with the domain read off the morphism sources. Error(ShapeMismatch)
/// when targets disagree or σ is not a permutation of the right size.
OperadOp make_operation(const Permutation& perm, const std::vector<Morphism>& morphisms);
/// Arity-0 operations carry their target explicitly.
OperadOp make_operation(const Object& target, const Permutation& perm, const std::vector<Morphism>& morphisms);
/// 1 = [e, id_N].
OperadOp operad_unit(const Category& cat, const Object& n);

/// Exact decision of the orthogonal-transposition congruence: same tuples, and
/// every pair of labels whose morphisms are NOT orthogonal occurs in the same
/// relative order in both words. Error(ShapeMismatch) when arity, domain or
/// target differ.
bool op_equal(const OperadOp& a, const OperadOp& b, const OrthoRel& rel);

/// Lexicographically least reachable word (greedy normal form), as an operation.
OperadOp canonical_form(const OperadOp& a, const OrthoRel& rel);
std::size_t op_hash(const OperadOp& a, const OrthoRel& rel);

/// [σ, f][σ_1..σ_n, g] = [σ(σ_1,..,σ_n), (f_i g_ij)].
OperadOp op_compose(const Category& cat, const OperadOp& outer, const std::vector<OperadOp>& inners);
/// [σ, f]·σ' = [σσ', fσ'] with domain Mσ'.
OperadOp op_permute(const OperadOp& a, const Permutation& sigma);
/// [σ, F(f)] : F(M) -> F(N).
OperadOp op_image(const Functor& f, const OperadOp& a);

/// Parses "[perm=2 1; f1,f2 -> N]". An empty morphism list needs the target.
OperadOp parse_operation(const Category& cat, std::string_view text);

}  // namespace aqft
