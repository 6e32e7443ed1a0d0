#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sixff {

// Exact scalar: a rational number when p == 0, otherwise a residue in [0, p).
class Scalar {
 public:
  Scalar() = default;
  Scalar(mpq_class v, std::uint32_t p);

  std::uint32_t modulus() const { return p_; }
  const mpq_class& value() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;

  bool operator==(const Scalar& o) const { return p_ == o.p_ && v_ == o.v_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string str() const;

 private:
  void check(const Scalar& o) const;
  mpq_class v_{0};
  std::uint32_t p_ = 0;
};

struct Field {
  std::uint32_t p = 0;  // 0 means the rationals

  static Field rationals() { return {0}; }
  static Field prime(std::uint32_t p);
  static Field parse(const std::string& spec);  // "q" or "fp:P"

  Scalar zero() const { return Scalar(0, p); }
  Scalar one() const { return Scalar(1, p); }
  Scalar from_int(long v) const { return Scalar(v, p); }
  Scalar from_frac(long num, long den) const;
  Scalar from_mpq(const mpq_class& q) const;

  // True when n is invertible in the field, i.e. averaging over a group of order n works.
  bool divides_ok(long n) const { return p == 0 || n % static_cast<long>(p) != 0; }

  std::string name() const { return p == 0 ? "Q" : "F" + std::to_string(p); }
  bool operator==(const Field& o) const { return p == o.p; }
};

class FieldMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sixff
