#pragma once

// Built-in infinite categories with closed-form composition over exact rationals.

#include "aqft/category.hpp"

#include <memory>

namespace aqft {

/// One-object category whose endomorphisms form the additive group Z.
/// Morphism ids are decimal integers; composition is addition.
CategoryPtr make_bz();
Morphism bz_element(const Integer& n);

/// One-object category whose endomorphisms form the additive group of rationals
/// (the exact stand-in for R with discrete topology).
CategoryPtr make_brdelta();
Morphism brdelta_element(const Rational& xi);

/// Intervals (a, b), -inf <= a < b <= +inf, with translations f_ξ : t -> t + ξ
/// mapping (a, b) into (a', b'), i.e. a' <= a + ξ and b + ξ <= b'.
/// Object ids are "(a,b)", morphism ids "f[ξ]"; `parse_morphism` expects
/// "f[ξ]:(a,b)->(a',b')".
CategoryPtr make_loc1_skeletal();
Object interval(const ExtRational& a, const ExtRational& b);
Object real_line();
/// f_ξ : from -> to when it exists.
std::optional<Morphism> translation(const Object& from, const Object& to, const Rational& xi);

}  // namespace aqft
