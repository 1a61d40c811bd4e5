#include "sepkit/spaces.hpp"

namespace sepkit {

MetricSpace real_line() {
  MetricSpace X;
  X.id = "real";
  X.dist = [](const Nat& n, const Nat& m) {
    return (rat_enum::value(n) - rat_enum::value(m)).abs();
  };
  return X;
}

namespace {
std::vector<int> cantor_bits(const Nat& index) {
  FinSeq s = seqcode::decode(index);
  std::vector<int> out;
  out.reserve(s.size());
  for (const auto& v : s) out.push_back(v == 0 ? 0 : 1);
  return out;
}
}  // namespace

MetricSpace cantor_space() {
  MetricSpace X;
  X.id = "cantor";
  X.dist = [](const Nat& n, const Nat& m) -> Rational {
    std::vector<int> a = cantor_bits(n), b = cantor_bits(m);
    std::size_t len = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < len; ++i) {
      int ai = i < a.size() ? a[i] : 0;
      int bi = i < b.size() ? b[i] : 0;
      if (ai != bi) return Rational(1, pow2(i));
    }
    return Rational(0);
  };
  return X;
}

std::vector<Rational> product_point_coords(const Nat& index) {
  FinSeq s = seqcode::decode(index);
  std::vector<Rational> out;
  out.reserve(s.size());
  for (const auto& v : s) out.push_back(rat_enum::value(v));
  return out;
}

Nat product_point_index(const std::vector<Rational>& coords) {
  std::size_t len = coords.size();
  while (len > 0 && coords[len - 1].is_zero()) --len;  // canonical form
  FinSeq s;
  s.reserve(len);
  for (std::size_t i = 0; i < len; ++i) s.push_back(rat_enum::index_of(coords[i]));
  return seqcode::encode(s);
}

Rational metric_squash(const Rational& t) { return t / (Rational(1) + t); }

std::optional<Rational> coord_slack(std::uint64_t n, const Rational& r) {
  Rational u = r * Rational(pow2(n));
  if (u >= Rational(1)) return std::nullopt;
  return u / (Rational(1) - u);
}

MetricSpace product_space() {
  MetricSpace X;
  X.id = "product";
  X.dist = [](const Nat& n, const Nat& m) -> Rational {
    std::vector<Rational> a = product_point_coords(n), b = product_point_coords(m);
    std::size_t len = std::max(a.size(), b.size());
    Rational best(0);
    for (std::size_t i = 0; i < len; ++i) {
      Rational ai = i < a.size() ? a[i] : Rational(0);
      Rational bi = i < b.size() ? b[i] : Rational(0);
      Rational t = (ai - bi).abs();
      best = rat_max(best, metric_squash(t) * Rational(1, pow2(i)));
    }
    return best;
  };
  return X;
}

ProductPoint product_point_from_name(const Stream& name) {
  ProductPoint p;
  p.coord = [name](std::uint64_t n) {
    return CReal::from_approx([name, n](std::uint64_t k) {
      std::vector<Rational> c = product_point_coords(name.at(Nat(n + k + 2)));
      return n < c.size() ? c[n] : Rational(0);
    });
  };
  return p;
}

}  // namespace sepkit
