#include "aqft/parametric.hpp"

#include "aqft/errors.hpp"

namespace aqft {
namespace {

const Object kStar{"*", {}};

Object parse_star(std::string_view text, const std::string& cat) {
  if (text != "*") throw Error(ErrorKind::InvalidArgument, cat + ": unknown object '" + std::string(text) + "'");
  return kStar;
}

/// Shared shape of the one-object groups BZ and BRδ.
class OneObjectGroup : public Category {
 public:
  Backend backend() const override { return Backend::Parametric; }
  bool has_object(const Object& x) const override { return x == kStar; }
  bool has_morphism(const Morphism& f) const override {
    return f.src == kStar && f.tgt == kStar && f.params.size() == 1 && accepts(f.params[0]) &&
           f.id == to_string(f.params[0]);
  }
  Morphism identity(const Object& x) const override {
    parse_star(x.id, name());
    return element(0);
  }
  std::optional<Morphism> inverse(const Morphism& f) const override { return element(-f.params.at(0)); }
  Object parse_object(std::string_view text) const override { return parse_star(text, name()); }
  Morphism parse_morphism(std::string_view text) const override {
    // accept "n" or "n:*->*"
    auto colon = text.find(':');
    Rational q = parse_rational(text.substr(0, colon));
    if (!accepts(q)) throw Error(ErrorKind::InvalidArgument, name() + ": not a morphism '" + std::string(text) + "'");
    return element(q);
  }
  Object sample_object(Rng&) const override { return kStar; }
  Morphism sample_morphism_from(const Object&, Rng& rng) const override { return element(draw(rng)); }
  Morphism sample_morphism_into(const Object&, Rng& rng) const override { return element(draw(rng)); }
  std::optional<Morphism> sample_morphism_between(const Object&, const Object&, Rng& rng) const override {
    return element(draw(rng));
  }

  Morphism element(const Rational& q) const { return Morphism{to_string(q), kStar, kStar, {q}}; }

 protected:
  virtual bool accepts(const Rational& q) const = 0;
  virtual Rational draw(Rng& rng) const = 0;
  Morphism compose_unchecked(const Morphism& g, const Morphism& f) const override {
    return element(g.params.at(0) + f.params.at(0));
  }
};

class BZ final : public OneObjectGroup {
 public:
  std::string name() const override { return "BZ"; }

 protected:
  bool accepts(const Rational& q) const override { return q.get_den() == 1; }
  Rational draw(Rng& rng) const override {
    std::uniform_int_distribution<long> d(-12, 12);
    return Rational(d(rng));
  }
};

class BRdelta final : public OneObjectGroup {
 public:
  std::string name() const override { return "BRdelta"; }

 protected:
  bool accepts(const Rational&) const override { return true; }
  Rational draw(Rng& rng) const override { return sample_rational(rng); }
};

ExtRational sample_endpoint(Rng& rng, bool lower) {
  std::uniform_int_distribution<int> inf(0, 7);
  if (inf(rng) == 0) return lower ? ExtRational::neg_inf() : ExtRational::pos_inf();
  return ExtRational(sample_rational(rng, 16, 4));
}

Rational sample_nonnegative(Rng& rng) {
  Rational q = sample_rational(rng, 6, 4);
  return q < 0 ? Rational(-q) : q;
}

class Loc1Skeletal final : public Category {
 public:
  std::string name() const override { return "Loc1Skeletal"; }
  Backend backend() const override { return Backend::Parametric; }

  bool has_object(const Object& x) const override {
    if (x.coords.size() != 2) return false;
    const auto& a = x.coords[0];
    const auto& b = x.coords[1];
    return a.kind() != ExtRational::Kind::PosInf && b.kind() != ExtRational::Kind::NegInf && a < b &&
           x.id == interval(a, b).id;
  }
  bool has_morphism(const Morphism& f) const override {
    if (!has_object(f.src) || !has_object(f.tgt) || f.params.size() != 1) return false;
    auto t = translation(f.src, f.tgt, f.params[0]);
    return t && *t == f;
  }
  Morphism identity(const Object& x) const override { return *translation(x, x, 0); }
  std::optional<Morphism> inverse(const Morphism& f) const override {
    return translation(f.tgt, f.src, -f.params.at(0));
  }
  Object parse_object(std::string_view text) const override {
    auto bad = [&] { return Error(ErrorKind::InvalidArgument, "Loc1Skeletal: bad interval '" + std::string(text) + "'"); };
    if (text.size() < 5 || text.front() != '(' || text.back() != ')') throw bad();
    auto comma = text.find(',');
    if (comma == std::string_view::npos) throw bad();
    auto a = parse_ext_rational(text.substr(1, comma - 1));
    auto b = parse_ext_rational(text.substr(comma + 1, text.size() - comma - 2));
    Object x = interval(a, b);
    if (!has_object(x)) throw bad();
    return x;
  }
  Morphism parse_morphism(std::string_view text) const override {
    auto bad = [&] { return Error(ErrorKind::InvalidArgument, "Loc1Skeletal: bad morphism '" + std::string(text) + "'"); };
    auto colon = text.find(':');
    auto arrow = text.find("->");
    if (text.substr(0, 2) != "f[" || colon == std::string_view::npos || arrow == std::string_view::npos) throw bad();
    auto close = text.find(']');
    if (close == std::string_view::npos || close > colon) throw bad();
    Rational xi = parse_rational(text.substr(2, close - 2));
    Object src = parse_object(text.substr(colon + 1, arrow - colon - 1));
    Object tgt = parse_object(text.substr(arrow + 2));
    auto f = translation(src, tgt, xi);
    if (!f) throw bad();
    return *f;
  }
  Object sample_object(Rng& rng) const override {
    for (;;) {
      auto a = sample_endpoint(rng, true);
      auto b = sample_endpoint(rng, false);
      if (a < b) return interval(a, b);
    }
  }
  Morphism sample_morphism_from(const Object& x, Rng& rng) const override {
    Rational xi = sample_rational(rng, 8, 4);
    std::uniform_int_distribution<int> inf(0, 5);
    ExtRational a = inf(rng) == 0 ? ExtRational::neg_inf() : x.coords[0] + xi;
    ExtRational b = inf(rng) == 0 ? ExtRational::pos_inf() : x.coords[1] + xi;
    if (a.finite()) a = ExtRational(a.value() - sample_nonnegative(rng));
    if (b.finite()) b = ExtRational(b.value() + sample_nonnegative(rng));
    return *translation(x, interval(a, b), xi);
  }
  Morphism sample_morphism_into(const Object& y, Rng& rng) const override {
    // shrink y and translate back: pick a sub-interval (a', b') of y, then ξ
    for (;;) {
      Object sub = sample_object(rng);
      const auto& ya = y.coords[0];
      const auto& yb = y.coords[1];
      ExtRational a = std::max(sub.coords[0], ya);
      ExtRational b = std::min(sub.coords[1], yb);
      if (!(a < b)) continue;
      Rational xi = sample_rational(rng, 8, 4);
      // source is (a - ξ, b - ξ)
      Object src = interval(a + Rational(-xi), b + Rational(-xi));
      if (auto f = translation(src, y, xi)) return *f;
    }
  }
  std::optional<Morphism> sample_morphism_between(const Object& x, const Object& y, Rng& rng) const override {
    // admissible ξ form the interval [a' - a, b' - b] (when finite)
    const auto& a = x.coords[0];
    const auto& b = x.coords[1];
    const auto& a2 = y.coords[0];
    const auto& b2 = y.coords[1];
    std::optional<Rational> lo, hi;
    if (a.finite() && a2.finite()) lo = a2.value() - a.value();
    else if (!a.finite() && a2.finite()) return std::nullopt;
    if (b.finite() && b2.finite()) hi = b2.value() - b.value();
    else if (!b.finite() && b2.finite()) return std::nullopt;
    Rational xi;
    if (lo && hi) {
      if (*lo > *hi) return std::nullopt;
      std::uniform_int_distribution<long> t(0, 8);
      xi = *lo + (*hi - *lo) * Rational(t(rng), 8);
    } else if (lo) {
      xi = *lo + sample_nonnegative(rng);
    } else if (hi) {
      xi = *hi - sample_nonnegative(rng);
    } else {
      xi = sample_rational(rng, 8, 4);
    }
    xi.canonicalize();
    return translation(x, y, xi);
  }

 protected:
  Morphism compose_unchecked(const Morphism& g, const Morphism& f) const override {
    return *translation(f.src, g.tgt, f.params.at(0) + g.params.at(0));
  }
};

}  // namespace

CategoryPtr make_bz() {
  static const CategoryPtr instance = std::make_shared<BZ>();
  return instance;
}

Morphism bz_element(const Integer& n) { return Morphism{n.get_str(), kStar, kStar, {Rational(n)}}; }

CategoryPtr make_brdelta() {
  static const CategoryPtr instance = std::make_shared<BRdelta>();
  return instance;
}

Morphism brdelta_element(const Rational& xi) { return Morphism{to_string(xi), kStar, kStar, {xi}}; }

CategoryPtr make_loc1_skeletal() {
  static const CategoryPtr instance = std::make_shared<Loc1Skeletal>();
  return instance;
}

Object interval(const ExtRational& a, const ExtRational& b) {
  return Object{"(" + to_string(a) + "," + to_string(b) + ")", {a, b}};
}

Object real_line() { return interval(ExtRational::neg_inf(), ExtRational::pos_inf()); }

std::optional<Morphism> translation(const Object& from, const Object& to, const Rational& xi) {
  if (from.coords.size() != 2 || to.coords.size() != 2) return std::nullopt;
  // (a, b) + ξ ⊆ (a', b')
  if (!(to.coords[0] <= from.coords[0] + xi)) return std::nullopt;
  if (!(from.coords[1] + xi <= to.coords[1])) return std::nullopt;
  Rational q = xi;
  q.canonicalize();
  return Morphism{"f[" + to_string(q) + "]", from, to, {q}};
}

}  // namespace aqft
