#pragma once

#include <optional>
#include <utility>

#include "sepkit/stream.hpp"

namespace sepkit {

// The fixed bijection between finite sequences of naturals and naturals.
//
// Sequences are ranked by total Elias-gamma codeword length (gamma_len(k) =
// 2*floor(log2(k+1)) + 1), classes counted by a cached DP table, then
// lexicographically within a weight class. The empty sequence gets code 0,
// codes of {0,1}-strings of length L stay within O(L) bits, and codes of
// short tuples are polynomial in the entries. Length, element access,
// singleton and concatenation are all computable in both directions.
namespace seqcode {

Nat encode(const FinSeq& s);
FinSeq decode(const Nat& code);

std::uint64_t gamma_len(const Nat& k);
Nat weight(const FinSeq& s);

inline Nat singleton(const Nat& k) { return encode(FinSeq{k}); }
Nat concat_codes(const Nat& a, const Nat& b);
std::uint64_t length_of(const Nat& code);
Nat element_of(const Nat& code, std::uint64_t i);

// code of the 2-sequence <a,b>
Nat pair(const Nat& a, const Nat& b);
std::optional<std::pair<Nat, Nat>> try_unpair(const Nat& code);

// number of weight-W sequences (DP table, extended on demand)
Nat class_count(std::uint64_t W);

}  // namespace seqcode

// Enumerates all k-tuples of naturals in increasing SeqCode order of the
// k-sequence <t_0,...,t_{k-1}>. Gives up (FuelExhausted) past a weight cap
// so runaway dovetails fail loudly instead of thrashing.
class TupleEnumerator {
 public:
  explicit TupleEnumerator(std::size_t arity, std::uint64_t weight_cap = 40);
  FinSeq next();

 private:
  void start_weight();
  bool advance();

  std::size_t arity_;
  std::uint64_t weight_cap_;
  std::uint64_t weight_;
  // per position: gamma class t and index within class (element = 2^t-1+e)
  std::vector<std::uint64_t> cls_;
  std::vector<Nat> idx_;
  bool exhausted_weight_ = true;
};

}  // namespace sepkit
