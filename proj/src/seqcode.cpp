#include "sepkit/seqcode.hpp"

#include <mutex>

namespace sepkit {
namespace seqcode {

namespace {

std::mutex g_mu;
std::vector<Nat> g_count;   // g_count[W] = number of weight-W sequences
std::vector<Nat> g_offset;  // g_offset[W] = number of sequences of weight < W

// The class counts obey N(W) = N(W-1) + 2 N(W-2): unfolding one element of
// gamma class t against the production N(W) = sum_t 2^t N(W-2t-1) gives the
// two-term recurrence, and with it the closed block sum
//   sum_{u<t} 2^u N(W-2u-1) = N(W) - 2^t N(W-2t).
void ensure_tables(std::uint64_t W) {
  if (g_count.size() > W) return;
  if (g_count.empty()) {
    g_count = {Nat(1), Nat(1), Nat(1)};
    g_offset = {Nat(0), Nat(1), Nat(2)};
  }
  while (g_count.size() <= W) {
    std::size_t V = g_count.size();
    g_offset.push_back(g_offset.back() + g_count.back());
    g_count.push_back(g_count[V - 1] + 2 * g_count[V - 2]);
  }
}

// gamma class of k: k+1 in [2^t, 2^{t+1})
std::uint64_t cls_of(const Nat& k) { return bit_length(k + 1) - 1; }

// number of weight-W sequences whose first element has class < t
Nat blocks_below(std::uint64_t W, std::uint64_t t) {
  return g_count[W] - pow2(t) * g_count[W - 2 * t];
}

}  // namespace

std::uint64_t gamma_len(const Nat& k) { return 2 * cls_of(k) + 1; }

Nat weight(const FinSeq& s) {
  Nat w = 0;
  for (const auto& k : s) w += gamma_len(k);
  return w;
}

Nat class_count(std::uint64_t W) {
  std::lock_guard<std::mutex> lk(g_mu);
  ensure_tables(W);
  return g_count[W];
}

Nat encode(const FinSeq& s) {
  Nat wbig = weight(s);
  std::uint64_t W = to_u64(wbig);
  std::lock_guard<std::mutex> lk(g_mu);
  ensure_tables(W);
  Nat rank = 0;
  std::uint64_t rem = W;
  for (const auto& k : s) {
    std::uint64_t t = cls_of(k);
    rank += blocks_below(rem, t);
    rank += (k - (pow2(t) - 1)) * g_count[rem - 2 * t - 1];
    rem -= 2 * t + 1;
  }
  return g_offset[W] + rank;
}

FinSeq decode(const Nat& code) {
  if (code < 0) throw Error("negative sequence code");
  std::lock_guard<std::mutex> lk(g_mu);
  std::uint64_t W = 0;
  {
    // offsets grow like 2^W: the weight class is near the bit length
    std::uint64_t guess = bit_length(code) + 2;
    ensure_tables(guess);
    while (g_offset[guess] > code && guess > 0) --guess;
    W = guess;
    for (;;) {
      ensure_tables(W + 1);
      if (g_offset[W + 1] > code) break;
      ++W;
    }
  }
  Nat r = code - g_offset[W];
  FinSeq out;
  while (W > 0) {
    // the class t with blocks_below(W, t) <= r < blocks_below(W, t+1)
    std::uint64_t lo = 0, hi = (W - 1) / 2;
    while (lo < hi) {
      std::uint64_t mid = (lo + hi + 1) / 2;
      if (blocks_below(W, mid) <= r)
        lo = mid;
      else
        hi = mid - 1;
    }
    std::uint64_t t = lo;
    const Nat& tails = g_count[W - 2 * t - 1];
    Nat within = r - blocks_below(W, t);
    out.push_back(pow2(t) - 1 + within / tails);
    r = within % tails;
    W -= 2 * t + 1;
  }
  return out;
}

Nat concat_codes(const Nat& a, const Nat& b) {
  FinSeq s = decode(a), t = decode(b);
  s.insert(s.end(), t.begin(), t.end());
  return encode(s);
}

std::uint64_t length_of(const Nat& code) { return decode(code).size(); }

Nat element_of(const Nat& code, std::uint64_t i) {
  FinSeq s = decode(code);
  if (i >= s.size()) throw Error("sequence element index out of range");
  return s[i];
}

Nat pair(const Nat& a, const Nat& b) { return encode(FinSeq{a, b}); }

std::optional<std::pair<Nat, Nat>> try_unpair(const Nat& code) {
  FinSeq s = decode(code);
  if (s.size() != 2) return std::nullopt;
  return std::make_pair(s[0], s[1]);
}

}  // namespace seqcode

TupleEnumerator::TupleEnumerator(std::size_t arity, std::uint64_t weight_cap)
    : arity_(arity), weight_cap_(weight_cap), weight_(arity ? arity - 1 : 0) {
  if (arity == 0) throw UsageError("tuple enumerator needs arity >= 1");
  cls_.resize(arity);
  idx_.resize(arity);
}

void TupleEnumerator::start_weight() {
  // minimal weight-W tuple: classes 0 everywhere, remainder absorbed last
  std::uint64_t base = arity_;  // every position weighs at least 1
  if (weight_ < base || (weight_ - base) % 2 != 0) {
    exhausted_weight_ = true;
    return;
  }
  for (std::size_t i = 0; i < arity_; ++i) {
    cls_[i] = 0;
    idx_[i] = 0;
  }
  cls_[arity_ - 1] = (weight_ - base) / 2;
  exhausted_weight_ = false;
}

bool TupleEnumerator::advance() {
  // weight consumed strictly before position i
  std::vector<std::uint64_t> before(arity_ + 1, 0);
  for (std::size_t i = 0; i < arity_; ++i) before[i + 1] = before[i] + 2 * cls_[i] + 1;
  for (std::size_t i = arity_; i-- > 0;) {
    std::uint64_t left = arity_ - 1 - i;  // positions after i
    if (idx_[i] + 1 < pow2(cls_[i])) {
      ++idx_[i];
    } else {
      // next class at position i, if the tail can still absorb the rest
      std::uint64_t avail = weight_ - before[i];
      std::uint64_t c = cls_[i] + 1;
      if (2 * c + 1 + left > avail) continue;
      cls_[i] = c;
      idx_[i] = 0;
    }
    // minimal tail for the remaining weight
    std::uint64_t rem = weight_ - before[i] - (2 * cls_[i] + 1);
    for (std::size_t j = i + 1; j < arity_; ++j) {
      cls_[j] = 0;
      idx_[j] = 0;
    }
    if (left > 0) cls_[arity_ - 1] = (rem - left) / 2;
    return true;
  }
  return false;
}

FinSeq TupleEnumerator::next() {
  for (;;) {
    if (exhausted_weight_) {
      ++weight_;
      if (weight_ > weight_cap_)
        throw FuelExhausted("tuple enumeration crossed its weight cap");
      start_weight();
      if (exhausted_weight_) continue;
      break;
    }
    if (advance()) break;
    exhausted_weight_ = true;
  }
  FinSeq out;
  out.reserve(arity_);
  for (std::size_t i = 0; i < arity_; ++i) out.push_back(pow2(cls_[i]) - 1 + idx_[i]);
  return out;
}

}  // namespace sepkit
