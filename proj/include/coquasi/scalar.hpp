#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace coquasi::exactla {

class Scalar;

/// Raised when two scalars from different fields meet in one operation.
class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The ground field: either the rationals or a prime field F_p.
class Field {
 public:
  Field() = default;

  static Field rational() { return Field(); }
  /// Throws std::invalid_argument if p is not a prime below 2^32.
  static Field prime(std::uint64_t p);

  bool is_rational() const { return p_ == 0; }
  /// 0 for the rationals.
  std::uint64_t characteristic() const { return p_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long v) const;
  /// Maps a rational into this field; throws if the denominator vanishes mod p.
  Scalar from_rational(const mpq_class& q) const;

  std::string name() const;

  bool operator==(const Field&) const = default;

 private:
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_ = 0;
};

/// An exact field element. Rationals are backed by GMP, residues by uint64.
class Scalar {
 public:
  struct Residue {
    std::uint64_t v;
    std::uint64_t p;
    bool operator==(const Residue&) const = default;
  };

  Scalar() : value_(mpq_class(0)) {}
  explicit Scalar(mpq_class q) : value_(std::move(q)) { std::get<mpq_class>(value_).canonicalize(); }
  Scalar(std::uint64_t v, std::uint64_t p) : value_(Residue{v % p, p}) {}

  Field field() const;
  bool is_zero() const;
  bool is_one() const;

  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  const Residue& residue() const { return std::get<Residue>(value_); }
  bool is_rational() const { return std::holds_alternative<mpq_class>(value_); }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);

  /// Throws std::domain_error on zero.
  Scalar inverse() const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// "p/q" (or "p") for rationals, "v mod p" for residues.
  std::string to_string() const;

 private:
  void check_same(const Scalar& o) const;
  std::variant<mpq_class, Residue> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace coquasi::exactla
