#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "sepkit/ints.hpp"

namespace sepkit {

// A finite sequence of naturals. The empty sequence is the vector {}.
using FinSeq = std::vector<Nat>;

inline FinSeq fs(std::initializer_list<std::uint64_t> xs) {
  FinSeq s;
  for (auto x : xs) s.push_back(Nat(x));
  return s;
}

// A point of Baire space: an infinite sequence of naturals, demanded by index.
//
// Two backings exist. Producer-backed streams own a stateful generator and an
// append-only cached prefix; demanding index n forces production of 0..n once
// each, and produced values never change. Rule-backed streams answer at any
// index (including indices far beyond anything that could be materialized)
// through a pure index rule; they memoize a bounded number of answers.
//
// Copies share the underlying state; the cache is extended under a lock, so
// copies may be driven from different threads.
class Stream {
 public:
  Stream() = default;

  Nat at(const Nat& i) const;
  Nat at(std::uint64_t i) const { return at(Nat(i)); }
  std::uint64_t at_u64(std::uint64_t i) const { return to_u64(at(Nat(i))); }

  FinSeq prefix(std::uint64_t n) const;

  bool valid() const { return impl_ != nullptr; }
  bool has_rule() const;
  // number of items produced so far (producer-backed only)
  std::uint64_t produced() const;

  // --- constructors ---
  static Stream from_rule(std::function<Nat(const Nat&)> rule);
  // step() appends zero or more items to the cache it is handed; a demand
  // gives up (FuelExhausted) after `budget` consecutive step calls without
  // reaching the demanded index.
  static Stream from_producer(std::function<void(std::vector<Nat>&)> step,
                              std::uint64_t budget = kDefaultBudget);
  static Stream constant(Nat v);
  static Stream zeros() { return constant(Nat(0)); }
  // head, then period repeated forever (period must be nonempty)
  static Stream periodic(std::vector<Nat> head, std::vector<Nat> period);
  // head, then base, base+step, base+2*step, ...
  static Stream affine_tail(std::vector<Nat> head, Nat base, Nat step);
  static Stream prepend(std::vector<Nat> head, Stream tail);

  // (p (+) q)(2i) = p(i), (p (+) q)(2i+1) = q(i)
  static Stream interleave(Stream p, Stream q);
  Stream even_part() const;  // i -> at(2i)
  Stream odd_part() const;   // i -> at(2i+1)
  Stream drop(std::uint64_t k) const;

  static constexpr std::uint64_t kDefaultBudget = 1u << 22;
  // producer-backed streams refuse to materialize past this index
  static constexpr std::uint64_t kMaterializeCap = 1u << 26;

 private:
  struct Impl;
  explicit Stream(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

inline std::pair<Stream, Stream> deinterleave(const Stream& r) {
  return {r.even_part(), r.odd_part()};
}

}  // namespace sepkit
