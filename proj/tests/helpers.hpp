#pragma once

#include <random>

#include "sepkit/machine.hpp"
#include "sepkit/stream.hpp"

namespace sepkit::testing {

inline Stream random_periodic(std::mt19937_64& rng, std::uint64_t max_value = 9) {
  std::vector<Nat> head, period;
  std::uint64_t hn = rng() % 4, pn = 1 + rng() % 4;
  for (std::uint64_t i = 0; i < hn; ++i) head.push_back(Nat(rng() % (max_value + 1)));
  for (std::uint64_t i = 0; i < pn; ++i) period.push_back(Nat(rng() % (max_value + 1)));
  return Stream::periodic(std::move(head), std::move(period));
}

inline bool same_prefix(const Stream& a, const Stream& b, std::uint64_t n) {
  for (std::uint64_t i = 0; i < n; ++i)
    if (a.at(i) != b.at(i)) return false;
  return true;
}

inline FinSeq random_finseq(std::mt19937_64& rng, std::uint64_t max_len,
                            std::uint64_t max_value) {
  FinSeq s;
  std::uint64_t n = rng() % (max_len + 1);
  for (std::uint64_t i = 0; i < n; ++i) s.push_back(Nat(rng() % (max_value + 1)));
  return s;
}

}  // namespace sepkit::testing
