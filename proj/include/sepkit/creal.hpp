#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "sepkit/rational.hpp"
#include "sepkit/stream.hpp"

namespace sepkit {

// The fixed enumeration a_Q of the rationals: 0, 1, -1, 1/2, -1/2, 2, -2, ...
// (signed breadth-first walk of the Stern-Brocot tree; a_Q(0)=0, a_Q(1)=1).
namespace rat_enum {
Rational value(const Nat& n);
Nat index_of(const Rational& r);
}  // namespace rat_enum

// A real given by a fast-converging Cauchy sequence of rationals:
// approx(k) is within 2^-k of the value. Reals built from a name stream
// check the modulus d(a(p(i)), a(p(j))) <= 2^-i at every inspected pair and
// raise MalformedName on violation. Exactly-rational reals remember it.
class CReal {
 public:
  CReal() : CReal(Rational(0)) {}
  CReal(Rational r);  // implicit: rationals embed
  static CReal from_approx(std::function<Rational(std::uint64_t)> f);
  static CReal from_name(Stream name);

  Rational approx(std::uint64_t k) const;
  std::optional<Rational> exact() const;
  // a Cauchy name for this real (indices into a_Q)
  Stream name() const;

  CReal operator-() const;
  CReal abs() const;
  friend CReal operator+(const CReal& x, const CReal& y);
  friend CReal operator-(const CReal& x, const CReal& y);
  friend CReal operator*(const CReal& x, const CReal& y);
  CReal scale(const Rational& r) const;

  static CReal max_of(std::vector<CReal> xs);

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

enum class Cmp { lt, gt, unknown };

// lt/gt only when certified by disjoint rational intervals at some precision
// <= fuel (immediately for distinct exact rationals); unknown otherwise.
// Equality is never certified.
Cmp creal_cmp(const CReal& x, const CReal& y, std::uint64_t fuel);

inline Cmp creal_cmp(const CReal& x, const Rational& y, std::uint64_t fuel) {
  return creal_cmp(x, CReal(y), fuel);
}

}  // namespace sepkit
