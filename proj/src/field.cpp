#include "sixff/field.hpp"

namespace sixff {

namespace {

mpq_class reduce_mod(const mpq_class& v, std::uint32_t p) {
  mpz_class num = v.get_num() % p;
  if (num < 0) num += p;
  mpz_class den = v.get_den() % p;
  if (den == 0) throw std::domain_error("denominator divisible by the field characteristic");
  mpz_class inv;
  mpz_class pz(p);
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
  mpz_class r = (num * inv) % p;
  return mpq_class(r);
}

}  // namespace

Scalar::Scalar(mpq_class v, std::uint32_t p) : v_(std::move(v)), p_(p) {
  v_.canonicalize();
  if (p_ != 0 && (v_.get_den() != 1 || v_ < 0 || v_ >= p_)) v_ = reduce_mod(v_, p_);
}

void Scalar::check(const Scalar& o) const {
  if (p_ != o.p_) throw FieldMismatch("scalars from different fields");
}

Scalar Scalar::operator+(const Scalar& o) const {
  check(o);
  if (p_ == 0) return Scalar(v_ + o.v_, 0);
  mpz_class s = v_.get_num() + o.v_.get_num();
  if (s >= p_) s -= p_;
  Scalar r;
  r.p_ = p_;
  r.v_ = mpq_class(s);
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
  Scalar r;
  r.p_ = p_;
  if (p_ == 0 || is_zero()) {
    r.v_ = -v_;
  } else {
    r.v_ = mpq_class(mpz_class(p_) - v_.get_num());
  }
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  check(o);
  if (p_ == 0) {
    Scalar r;
    r.v_ = v_ * o.v_;
    return r;
  }
  mpz_class m = (v_.get_num() * o.v_.get_num()) % p_;
  Scalar r;
  r.p_ = p_;
  r.v_ = mpq_class(m);
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (p_ == 0) return Scalar(1 / v_, 0);
  mpz_class inv;
  mpz_class pz(p_);
  mpz_invert(inv.get_mpz_t(), v_.get_num_mpz_t(), pz.get_mpz_t());
  Scalar r;
  r.p_ = p_;
  r.v_ = mpq_class(inv);
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

std::string Scalar::str() const { return v_.get_str(); }

Field Field::prime(std::uint32_t p) {
  if (p < 2) throw std::invalid_argument("modulus must be prime");
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  return {p};
}

Field Field::parse(const std::string& spec) {
  if (spec == "q" || spec == "Q") return rationals();
  if (spec.rfind("fp:", 0) == 0) return prime(static_cast<std::uint32_t>(std::stoul(spec.substr(3))));
  throw std::invalid_argument("unknown field spec '" + spec + "' (expected q or fp:P)");
}

Scalar Field::from_frac(long num, long den) const { return Scalar(mpq_class(num, den), p); }

Scalar Field::from_mpq(const mpq_class& q) const { return Scalar(q, p); }

}  // namespace sixff
