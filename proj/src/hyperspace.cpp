#include "sepkit/hyperspace.hpp"

#include <map>
#include <mutex>

namespace sepkit {

ClosedMinus ClosedMinus::whole_space() {
  ClosedMinus a;
  a.ball = [](std::uint64_t) { return std::nullopt; };
  return a;
}

ClosedMinus ClosedMinus::interleave2(const ClosedMinus& a, const ClosedMinus& b) {
  ClosedMinus out;
  auto fa = a.ball, fb = b.ball;
  out.ball = [fa, fb](std::uint64_t i) { return i % 2 == 0 ? fa(i / 2) : fb(i / 2); };
  return out;
}

Nat ball_code(const Ball& b) {
  return seqcode::pair(b.center, rat_enum::index_of(b.radius));
}

Ball decode_ball(const Nat& code) {
  auto cr = seqcode::try_unpair(code);
  if (!cr) throw MalformedName("ball code is not a pair");
  return Ball{cr->first, rat_enum::value(cr->second)};
}

Nat cover_code(const std::vector<Ball>& balls) {
  FinSeq s;
  s.reserve(balls.size());
  for (const auto& b : balls) s.push_back(ball_code(b));
  return seqcode::encode(s);
}

std::vector<Ball> decode_cover(const Nat& code) {
  FinSeq s = seqcode::decode(code);
  std::vector<Ball> out;
  out.reserve(s.size());
  for (const auto& c : s) out.push_back(decode_ball(c));
  return out;
}

CoverSpec extract_level_cover(const Stream& cover_codes, std::uint64_t level,
                              std::uint64_t fuel) {
  Rational target = Rational(1, pow2(level));
  for (std::uint64_t pos = 0; pos < fuel; ++pos) {
    auto balls = std::make_shared<std::vector<Ball>>(decode_cover(cover_codes.at(pos)));
    bool fine = !balls->empty();
    for (const auto& b : *balls)
      if (b.radius > target) fine = false;
    if (!fine) continue;
    CoverSpec spec;
    spec.count = balls->size();
    spec.radius = target;
    spec.center = [balls](const Nat& j) { return (*balls)[to_u64(j)].center; };
    return spec;
  }
  throw FuelExhausted("no fine enough cover listed in the scanned prefix");
}

CompactName unit_interval_compact() {
  CompactName K;
  K.meets = true;
  K.level_cover = [](std::uint64_t level) {
    CoverSpec spec;
    spec.count = pow2(level + 1) + 1;
    spec.radius = Rational(1, pow2(level));
    spec.center = [level](const Nat& j) {
      return rat_enum::index_of(Rational(j, pow2(level + 1)));
    };
    return spec;
  };
  auto lc = K.level_cover;
  K.cover_codes = Stream::from_rule([lc](const Nat& pos) -> Nat {
    std::uint64_t level = to_u64(pos);
    if (level > 12) throw FuelExhausted("cover enumeration materializes only low levels");
    CoverSpec spec = lc(level);
    std::vector<Ball> balls;
    for (Nat j = 0; j < spec.count; ++j)
      balls.push_back(Ball{spec.center(j), spec.radius});
    return cover_code(balls);
  });
  return K;
}

CompactName cantor_compact() {
  CompactName K;
  K.meets = true;
  K.level_cover = [](std::uint64_t level) {
    CoverSpec spec;
    spec.count = pow2(level + 1);
    spec.radius = Rational(1, pow2(level));
    spec.center = [level](const Nat& j) {
      std::vector<Nat> s;
      for (std::uint64_t i = 0; i <= level; ++i)
        s.push_back(boost::multiprecision::bit_test(j, static_cast<unsigned>(i)) ? 1 : 0);
      return seqcode::encode(s);
    };
    return spec;
  };
  auto lc = K.level_cover;
  K.cover_codes = Stream::from_rule([lc](const Nat& pos) -> Nat {
    std::uint64_t level = to_u64(pos);
    if (level > 12) throw FuelExhausted("cover enumeration materializes only low levels");
    CoverSpec spec = lc(level);
    std::vector<Ball> balls;
    for (Nat j = 0; j < spec.count; ++j)
      balls.push_back(Ball{spec.center(j), spec.radius});
    return cover_code(balls);
  });
  return K;
}

struct SelTree::State {
  MetricSpace X;
  CompactName K;
  ClosedMinus A;
  mutable std::mutex mu;
  mutable std::vector<CoverSpec> covers;
  mutable std::vector<std::optional<Ball>> balls;

  const CoverSpec& cover(std::uint64_t level) const {
    std::lock_guard<std::mutex> lk(mu);
    while (covers.size() <= level) {
      std::uint64_t l = covers.size();
      covers.push_back(K.level_cover ? K.level_cover(l)
                                     : extract_level_cover(K.cover_codes, l));
    }
    return covers[level];
  }
  std::optional<Ball> listed_ball(std::uint64_t i) const {
    std::lock_guard<std::mutex> lk(mu);
    while (balls.size() <= i) balls.push_back(A.ball(balls.size()));
    return balls[i];
  }
};

SelTree::SelTree(MetricSpace X, CompactName K, ClosedMinus A)
    : st_(std::make_shared<State>()) {
  st_->X = std::move(X);
  st_->K = std::move(K);
  st_->A = std::move(A);
}

const CoverSpec& SelTree::cover(std::uint64_t level) const { return st_->cover(level); }

Nat SelTree::bound(std::uint64_t level) const { return cover(level).count; }

Nat SelTree::center_index(std::uint64_t level, const Nat& j) const {
  return cover(level).center(j);
}

bool SelTree::member(const std::vector<Nat>& node) const {
  std::size_t L = node.size();
  if (L == 0) return true;
  for (std::size_t n = 0; n < L; ++n)
    if (node[n] >= bound(n)) return false;
  std::vector<Nat> centers(L);
  for (std::size_t n = 0; n < L; ++n) centers[n] = center_index(n, node[n]);
  // the displayed conditions quantify over every k < L; with exact distances
  // the k = L-1 instance is the binding one
  Rational eps_k(1, pow2(L - 1));
  for (std::size_t n = 0; n < L; ++n)
    for (std::size_t i = n + 1; i < L; ++i) {
      Rational lhs = st_->X.dist(centers[n], centers[i]);
      if (lhs > Rational(1, pow2(n)) + Rational(1, pow2(i)) + eps_k) return false;
    }
  for (std::size_t i = 0; i < L; ++i) {
    auto b = st_->listed_ball(i);
    if (!b) continue;
    for (std::size_t n = 0; n < L; ++n) {
      Rational lhs = st_->X.dist(centers[n], b->center);
      if (lhs < b->radius - Rational(1, pow2(n)) - eps_k) return false;
    }
  }
  return true;
}

BoundedTreeView SelTree::view() const {
  BoundedTreeView v;
  SelTree self = *this;
  v.bound = Stream::from_rule([self](const Nat& i) { return self.bound(to_u64(i)); });
  v.member = [self](const std::vector<Nat>& node) { return self.member(node); };
  return v;
}

Stream sel_point(const SelTree& tree, const Stream& path) {
  SelTree t = tree;
  return Stream::from_rule([t, path](const Nat& i) {
    std::uint64_t level = to_u64(i) + 2;
    return t.center_index(level, path.at(Nat(level)));
  });
}

ClosedMinus cantor_complement_tree(const BinaryTreeView& T) {
  ClosedMinus a;
  auto member = T.member;
  a.ball = [member](std::uint64_t i) -> std::optional<Ball> {
    FinSeq s = seqcode::decode(Nat(i));
    for (const auto& b : s)
      if (b > 1) return std::nullopt;
    if (member(s)) return std::nullopt;
    Rational radius = s.empty() ? Rational(2) : Rational(1, pow2(s.size() - 1));
    return Ball{seqcode::encode(s), radius};
  };
  return a;
}

ClosedMinus real_segment_complement(const Rational& lo, const Rational& hi,
                                    std::uint64_t shuffle_seed) {
  ClosedMinus a;
  a.ball = [lo, hi, shuffle_seed](std::uint64_t pos) -> std::optional<Ball> {
    // a light seeded permutation inside blocks of 16 keeps listings varied
    std::uint64_t block = pos / 16, off = pos % 16;
    std::uint64_t i = block * 16 + ((off + shuffle_seed + block) % 16);
    std::uint64_t side = i % 2;
    FinSeq gj = seqcode::decode(Nat(i / 2));
    if (gj.size() != 2 || !fits_u64(gj[0]) || !fits_u64(gj[1])) return std::nullopt;
    std::uint64_t g = to_u64(gj[0]) + 1;
    Rational r(1, pow2(g));
    Rational j(gj[1]);
    Rational center = side == 0 ? lo - (j + Rational(1)) * r : hi + (j + Rational(1)) * r;
    return Ball{rat_enum::index_of(center), r};
  };
  return a;
}

}  // namespace sepkit
