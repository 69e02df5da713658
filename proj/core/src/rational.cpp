#include "lep/rational.hpp"

#include <cctype>
#include <cmath>

#include "lep/error.hpp"

namespace lep {

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  q_ /= o.q_;
  return *this;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto fail = [&]() -> Rational {
    throw InputError("not an exact rational: '" + std::string(text) + "'");
  };

  Rational out;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto n = s.substr(0, slash);
    auto d = s.substr(slash + 1);
    if (!all_digits(n) || !all_digits(d)) return fail();
    mpz_class den{std::string(d), 10};
    if (den == 0) return fail();
    out = Rational(mpz_class(std::string(n), 10), den);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) return fail();
    if (!whole.empty() && !all_digits(whole)) return fail();
    if (!frac.empty() && !all_digits(frac)) return fail();
    mpz_class num(whole.empty() ? std::string("0") : std::string(whole), 10);
    mpz_class scale = 1;
    for (char c : frac) {
      num = num * 10 + (c - '0');
      scale *= 10;
    }
    out = Rational(num, scale);
  } else {
    if (!all_digits(s)) return fail();
    out = Rational(mpz_class(std::string(s), 10), mpz_class(1));
  }
  return negative ? -out : out;
}

Rational Rational::approximate(double x, long max_den) {
  if (!std::isfinite(x)) throw std::domain_error("Rational::approximate: non-finite input");
  // Convergents h/k of the continued fraction of x.
  mpz_class h_prev = 1, h = static_cast<long>(std::floor(x));
  mpz_class k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  for (int iter = 0; iter < 64 && frac > 1e-15; ++iter) {
    double inv = 1.0 / frac;
    double a = std::floor(inv);
    if (a > 1e15) break;
    mpz_class ai = static_cast<long>(a);
    mpz_class k_next = ai * k + k_prev;
    if (k_next > max_den) break;
    mpz_class h_next = ai * h + h_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    frac = inv - a;
  }
  return Rational(h, k);
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& base, unsigned exp) {
  Rational result(1), b = base;
  while (exp) {
    if (exp & 1U) result *= b;
    exp >>= 1U;
    if (exp) b *= b;
  }
  return result;
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
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

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  if (o.is_zero()) throw std::domain_error("GaussRational: division by zero");
  if (o.im_.is_zero()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Rational n = o.norm();
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

std::string GaussRational::str() const {
  if (im_.is_zero()) return re_.str();
  auto imag_part = [](const Rational& v) -> std::string {
    Rational a = abs(v);
    return a == Rational(1) ? std::string("i") : a.str() + "*i";
  };
  if (re_.is_zero()) return (im_.sign() < 0 ? "-" : "") + imag_part(im_);
  return re_.str() + (im_.sign() < 0 ? " - " : " + ") + imag_part(im_);
}

GaussRational pow(const GaussRational& base, unsigned exp) {
  GaussRational result(1), b = base;
  while (exp) {
    if (exp & 1U) result *= b;
    exp >>= 1U;
    if (exp) b *= b;
  }
  return result;
}

}  // namespace lep
