#include "centerkit/coefficient.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

#include "centerkit/errors.hpp"

namespace centerkit {

namespace {

bool all_digits(std::string_view s)
{
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

BigInt parse_integer(std::string_view s, std::string_view whole)
{
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) { throw ParseError("coefficient", "malformed integer in '" + std::string(whole) + "'"); }
  BigInt const v{std::string(s)};
  return negative ? BigInt(-v) : v;
}

Rational parse_rational(std::string_view s, std::string_view whole)
{
  auto const slash = s.find('/');
  if (slash == std::string_view::npos) { return Rational(parse_integer(s, whole)); }
  BigInt const num = parse_integer(s.substr(0, slash), whole);
  auto den_text = s.substr(slash + 1);
  if (!den_text.empty() && den_text.front() == '+') { den_text.remove_prefix(1); }
  if (!all_digits(den_text)) { throw ParseError("coefficient", "malformed denominator in '" + std::string(whole) + "'"); }
  BigInt const den(std::string{den_text});
  if (den.is_zero()) { throw ValidationError("coefficient", "zero denominator in '" + std::string(whole) + "'"); }
  return Rational(num, den);
}

std::string rational_text(Rational const &r)
{
  auto const num = boost::multiprecision::numerator(r);
  auto const den = boost::multiprecision::denominator(r);
  if (den == 1) { return num.str(); }
  return num.str() + "/" + den.str();
}

} // namespace

Coefficient Coefficient::parse(std::string_view text)
{
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) { compact.push_back(c); }
  }
  std::string_view s = compact;
  if (s.empty()) { throw ParseError("coefficient", "empty coefficient"); }
  if (s.back() != 'i') { return Coefficient(parse_rational(s, text)); }

  s.remove_suffix(1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
      split = k;
      break;
    }
  }
  std::string_view const re_text = split == std::string_view::npos ? std::string_view{} : s.substr(0, split);
  std::string_view im_text = split == std::string_view::npos ? s : s.substr(split);
  Rational im;
  if (im_text.empty() || im_text == "+") {
    im = 1;
  } else if (im_text == "-") {
    im = -1;
  } else {
    im = parse_rational(im_text, text);
  }
  Rational const re = re_text.empty() ? Rational(0) : parse_rational(re_text, text);
  return {re, im};
}

std::complex<double> Coefficient::to_complex() const
{
  return {re_.convert_to<double>(), im_.convert_to<double>()};
}

Coefficient Coefficient::inverse() const
{
  Rational const n = norm2();
  if (n.is_zero()) { throw std::domain_error("Coefficient::inverse: division by zero"); }
  return {re_ / n, -im_ / n};
}

Coefficient &Coefficient::operator+=(Coefficient const &o)
{
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Coefficient &Coefficient::operator-=(Coefficient const &o)
{
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Coefficient &Coefficient::operator*=(Coefficient const &o)
{
  if (im_.is_zero() && o.im_.is_zero()) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Coefficient &Coefficient::operator/=(Coefficient const &o)
{
  if (o.im_.is_zero()) {
    if (o.re_.is_zero()) { throw std::domain_error("Coefficient: division by zero"); }
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string Coefficient::to_string() const
{
  if (im_.is_zero()) { return rational_text(re_); }
  std::string out = rational_text(re_);
  out += im_ < 0 ? "-" : "+";
  out += rational_text(im_ < 0 ? Rational(-im_) : im_);
  out += " i";
  return out;
}

std::ostream &operator<<(std::ostream &os, Coefficient const &c) { return os << c.to_string(); }

Coefficient pow(Coefficient base, unsigned exponent)
{
  Coefficient result(1);
  while (exponent != 0) {
    if (exponent & 1u) { result *= base; }
    exponent >>= 1;
    if (exponent != 0) { base *= base; }
  }
  return result;
}

} // namespace centerkit
