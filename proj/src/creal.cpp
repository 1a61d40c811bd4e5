#include "sepkit/creal.hpp"

#include <map>
#include <mutex>

#include "sepkit/seqcode.hpp"

namespace sepkit {

namespace rat_enum {

// Positive rationals correspond to canonical continued fractions
// [a0; a1, ..., ak] (middles >= 1, final term >= 2), which correspond to
// finite sequences through SeqCode. Codes stay polynomial in numerator and
// denominator, so names can carry dyadics of any precision. A single swap of
// the codes 1 and 2 keeps the classical opening 0, 1, -1, 1/2, -1/2, 2, -2.

namespace {

Nat swap12(const Nat& m) {
  if (m == 1) return 2;
  if (m == 2) return 1;
  return m;
}

Rational positive_value(const Nat& m) {
  FinSeq s = seqcode::decode(swap12(m));
  if (s.empty()) return Rational(1);
  if (s.size() == 1) return Rational(s[0] + 2);
  // fold through integer convergents: p_i = a_i p_{i-1} + p_{i-2}; the final
  // pair is already coprime
  BigInt p_prev = 1, p = s[0];
  BigInt q_prev = 0, q = 1;
  for (std::size_t i = 1; i < s.size(); ++i) {
    BigInt a = i + 1 == s.size() ? BigInt(s[i] + 2) : BigInt(s[i] + 1);
    BigInt p_next = a * p + p_prev;
    BigInt q_next = a * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(p_next);
    q = std::move(q_next);
  }
  return Rational(p, q);
}

Nat positive_index(const Rational& r) {
  if (r == Rational(1)) return 0;
  FinSeq s;
  if (r.den() == 1) {
    s.push_back(Nat(r.num() - 2));
  } else {
    BigInt p = r.num(), q = r.den();
    std::vector<BigInt> terms;
    while (q != 0) {
      BigInt a = p / q;
      if (p < 0 && a * q != p) --a;  // floor division (first term only)
      terms.push_back(a);
      BigInt rem = p - a * q;
      p = q;
      q = rem;
    }
    // Euclid on a reduced non-integer ends with a final quotient >= 2
    s.push_back(terms[0]);
    for (std::size_t i = 1; i + 1 < terms.size(); ++i) s.push_back(terms[i] - 1);
    s.push_back(terms.back() - 2);
  }
  return swap12(seqcode::encode(s));
}

}  // namespace

Rational value(const Nat& n) {
  if (n < 0) throw Error("negative rational index");
  if (n == 0) return Rational(0);
  bool negative = ((n - 1) % 2) == 1;
  Rational r = positive_value((n - 1) / 2);
  return negative ? -r : r;
}

Nat index_of(const Rational& r) {
  if (r.is_zero()) return 0;
  Nat m = positive_index(r.abs());
  return 2 * m + (r.sign() < 0 ? 2 : 1);
}

}  // namespace rat_enum

struct CReal::Impl {
  std::recursive_mutex mu;
  std::function<Rational(std::uint64_t)> fn;
  std::optional<Rational> exact;
  std::optional<Stream> given_name;
  std::map<std::uint64_t, Rational> cache;

  Rational approx(std::uint64_t k) {
    std::lock_guard<std::recursive_mutex> lk(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    Rational a = exact ? *exact : fn(k);
    if (given_name) {
      // modulus check against every previously inspected index
      for (const auto& [j, b] : cache) {
        std::uint64_t lo = std::min(j, k);
        if ((a - b).abs() > Rational::dyadic(1, lo))
          throw MalformedName("Cauchy name modulus violated between indices " +
                              std::to_string(j) + " and " + std::to_string(k));
      }
    }
    cache.emplace(k, a);
    return a;
  }
};

CReal::CReal(Rational r) {
  impl_ = std::make_shared<Impl>();
  impl_->exact = std::move(r);
}

CReal CReal::from_approx(std::function<Rational(std::uint64_t)> f) {
  CReal x;
  x.impl_ = std::make_shared<Impl>();
  x.impl_->fn = std::move(f);
  return x;
}

CReal CReal::from_name(Stream name) {
  CReal x;
  x.impl_ = std::make_shared<Impl>();
  x.impl_->given_name = name;
  x.impl_->fn = [name](std::uint64_t k) { return rat_enum::value(name.at(k)); };
  return x;
}

Rational CReal::approx(std::uint64_t k) const { return impl_->approx(k); }

std::optional<Rational> CReal::exact() const { return impl_->exact; }

Stream CReal::name() const {
  if (impl_->given_name) return *impl_->given_name;
  CReal self = *this;
  return Stream::from_rule([self](const Nat& i) -> Nat {
    return rat_enum::index_of(self.approx(to_u64(i) + 2));
  });
}

CReal CReal::operator-() const {
  if (impl_->exact) return CReal(-*impl_->exact);
  CReal self = *this;
  return from_approx([self](std::uint64_t k) { return -self.approx(k); });
}

CReal CReal::abs() const {
  if (impl_->exact) return CReal(impl_->exact->abs());
  CReal self = *this;
  return from_approx([self](std::uint64_t k) { return self.approx(k).abs(); });
}

CReal operator+(const CReal& x, const CReal& y) {
  auto ex = x.exact(), ey = y.exact();
  if (ex && ey) return CReal(*ex + *ey);
  return CReal::from_approx(
      [x, y](std::uint64_t k) { return x.approx(k + 1) + y.approx(k + 1); });
}

CReal operator-(const CReal& x, const CReal& y) {
  auto ex = x.exact(), ey = y.exact();
  if (ex && ey) return CReal(*ex - *ey);
  return CReal::from_approx(
      [x, y](std::uint64_t k) { return x.approx(k + 1) - y.approx(k + 1); });
}

namespace {
std::uint64_t magnitude_bits(const Rational& bound) {
  BigInt c = bound.abs().ceil();
  return bit_length(c) + 1;
}
}  // namespace

CReal operator*(const CReal& x, const CReal& y) {
  auto ex = x.exact(), ey = y.exact();
  if (ex && ey) return CReal(*ex * *ey);
  if (ex) return y.scale(*ex);
  if (ey) return x.scale(*ey);
  return CReal::from_approx([x, y](std::uint64_t k) {
    Rational bx = x.approx(0).abs() + Rational(1);
    Rational by = y.approx(0).abs() + Rational(1);
    std::uint64_t kx = k + 1 + magnitude_bits(by);
    std::uint64_t ky = k + 1 + magnitude_bits(bx);
    return x.approx(kx) * y.approx(ky);
  });
}

CReal CReal::scale(const Rational& r) const {
  if (impl_->exact) return CReal(*impl_->exact * r);
  if (r.is_zero()) return CReal(Rational(0));
  CReal self = *this;
  std::uint64_t shift = magnitude_bits(r);
  return from_approx(
      [self, r, shift](std::uint64_t k) { return self.approx(k + shift) * r; });
}

CReal CReal::max_of(std::vector<CReal> xs) {
  if (xs.empty()) throw UsageError("max of empty set");
  bool all_exact = true;
  for (const auto& x : xs)
    if (!x.exact()) all_exact = false;
  if (all_exact) {
    Rational m = *xs[0].exact();
    for (const auto& x : xs) m = rat_max(m, *x.exact());
    return CReal(m);
  }
  return from_approx([xs](std::uint64_t k) {
    Rational m = xs[0].approx(k);
    for (std::size_t i = 1; i < xs.size(); ++i) m = rat_max(m, xs[i].approx(k));
    return m;
  });
}

Cmp creal_cmp(const CReal& x, const CReal& y, std::uint64_t fuel) {
  auto ex = x.exact(), ey = y.exact();
  if (ex && ey) {
    if (*ex < *ey) return Cmp::lt;
    if (*ey < *ex) return Cmp::gt;
    return Cmp::unknown;
  }
  // precision doubles towards the fuel bound; certification still happens at
  // some precision <= fuel, approximations just are not recomputed densely
  std::uint64_t i = 0;
  for (;;) {
    Rational ax = x.approx(i), ay = y.approx(i);
    Rational eps = Rational::dyadic(1, i);
    if (ax + eps < ay - eps) return Cmp::lt;
    if (ay + eps < ax - eps) return Cmp::gt;
    if (i >= fuel) return Cmp::unknown;
    i = i == 0 ? 1 : std::min(fuel, i * 2);
  }
}

}  // namespace sepkit
