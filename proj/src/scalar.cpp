#include "coquasi/scalar.hpp"

#include <ostream>

namespace coquasi::exactla {

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t reduce_mpz(const mpz_class& z, std::uint64_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return r.get_ui();
}

}  // namespace

Field Field::prime(std::uint64_t p) {
  if (p >= (1ULL << 32) || !is_prime(p))
    throw std::invalid_argument("field characteristic must be a prime below 2^32, got " + std::to_string(p));
  return Field(p);
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long long v) const {
  if (is_rational()) return Scalar(mpq_class(mpz_class(static_cast<long>(v))));
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += static_cast<long long>(p_);
  return Scalar(static_cast<std::uint64_t>(r), p_);
}

Scalar Field::from_rational(const mpq_class& q) const {
  if (is_rational()) return Scalar(q);
  std::uint64_t den = reduce_mpz(q.get_den(), p_);
  if (den == 0)
    throw std::domain_error("denominator of " + q.get_str() + " vanishes mod " + std::to_string(p_));
  std::uint64_t num = reduce_mpz(q.get_num(), p_);
  return Scalar(mulmod(num, powmod(den, p_ - 2, p_), p_), p_);
}

std::string Field::name() const { return is_rational() ? "rational" : "fp:" + std::to_string(p_); }

Field Scalar::field() const {
  if (is_rational()) return Field::rational();
  return Field::prime(residue().p);
}

bool Scalar::is_zero() const {
  if (is_rational()) return sgn(rational()) == 0;
  return residue().v == 0;
}

bool Scalar::is_one() const {
  if (is_rational()) return rational() == 1;
  return residue().v == 1;
}

void Scalar::check_same(const Scalar& o) const {
  if (value_.index() != o.value_.index() || (!is_rational() && residue().p != o.residue().p))
    throw FieldMismatch("scalars from different fields: " + to_string() + " and " + o.to_string());
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar r = *this;
  r += o;
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar r = *this;
  r -= o;
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar r = *this;
  r *= o;
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
  if (is_rational()) return Scalar(mpq_class(-rational()));
  const auto& r = residue();
  return Scalar(r.v == 0 ? 0 : r.p - r.v, r.p);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (is_rational()) {
    std::get<mpq_class>(value_) += o.rational();
  } else {
    auto& r = std::get<Residue>(value_);
    r.v = (r.v + o.residue().v) % r.p;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  if (is_rational()) {
    std::get<mpq_class>(value_) -= o.rational();
  } else {
    auto& r = std::get<Residue>(value_);
    r.v = (r.v + r.p - o.residue().v) % r.p;
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  if (is_rational()) {
    std::get<mpq_class>(value_) *= o.rational();
  } else {
    auto& r = std::get<Residue>(value_);
    r.v = mulmod(r.v, o.residue().v, r.p);
  }
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (is_rational()) return Scalar(mpq_class(1 / rational()));
  const auto& r = residue();
  return Scalar(powmod(r.v, r.p - 2, r.p), r.p);
}

bool Scalar::operator==(const Scalar& o) const {
  check_same(o);
  if (is_rational()) return rational() == o.rational();
  return residue().v == o.residue().v;
}

std::string Scalar::to_string() const {
  if (is_rational()) return rational().get_str();
  return std::to_string(residue().v) + " mod " + std::to_string(residue().p);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace coquasi::exactla
