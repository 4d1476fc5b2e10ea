#include "aqft/rational.hpp"

#include "aqft/errors.hpp"

#include <cctype>

namespace aqft {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonComposable: return "NonComposable";
    case ErrorKind::UndecidableForBackend: return "UndecidableForBackend";
    case ErrorKind::BackendUnsupported: return "BackendUnsupported";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::BadSeedPair: return "BadSeedPair";
    case ErrorKind::BackwardStepNotInW: return "BackwardStepNotInW";
    case ErrorKind::InvalidCategory: return "InvalidCategory";
    case ErrorKind::InvalidComplex: return "InvalidComplex";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::UncertifiedReflectiveData: return "UncertifiedReflectiveData";
    case ErrorKind::TimeSliceViolated: return "TimeSliceViolated";
    case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorKind::WindowExceedsTruncation: return "WindowExceedsTruncation";
    case ErrorKind::Schema: return "Schema";
  }
  return "Unknown";
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  // tolerate a unicode minus sign copied from documents
  if (s.rfind("−", 0) == 0) s = "-" + s.substr(3);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  Rational q;
  auto bad = [&] { return Error(ErrorKind::InvalidArgument, "not a rational: '" + std::string(text) + "'"); };
  if (s.empty()) throw bad();
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/')) throw bad();
  }
  if (q.set_str(s, 10) != 0) throw bad();
  if (q.get_den() == 0) throw bad();
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

ExtRational ExtRational::operator+(const Rational& q) const {
  if (!finite()) return *this;
  return ExtRational(value_ + q);
}

bool operator==(const ExtRational& a, const ExtRational& b) {
  if (a.kind_ != b.kind_) return false;
  return !a.finite() || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
  auto rank = [](ExtRational::Kind k) { return static_cast<int>(k); };
  if (a.kind_ != b.kind_) return rank(a.kind_) <=> rank(b.kind_);
  if (!a.finite()) return std::strong_ordering::equal;
  int c = cmp(a.value_, b.value_);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

ExtRational parse_ext_rational(std::string_view text) {
  if (text == "inf" || text == "+inf") return ExtRational::pos_inf();
  if (text == "-inf") return ExtRational::neg_inf();
  return ExtRational(parse_rational(text));
}

std::string to_string(const ExtRational& x) {
  switch (x.kind()) {
    case ExtRational::Kind::NegInf: return "-inf";
    case ExtRational::Kind::PosInf: return "inf";
    case ExtRational::Kind::Finite: break;
  }
  return to_string(x.value());
}

Rational sample_rational(Rng& rng, long num_bound, long den_bound) {
  std::uniform_int_distribution<long> num(-num_bound, num_bound);
  std::uniform_int_distribution<long> den(1, den_bound);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

}  // namespace aqft
