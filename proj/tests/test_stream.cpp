#include "doctest.h"
#include "helpers.hpp"
#include "sepkit/stream.hpp"

using namespace sepkit;

TEST_CASE("producer streams cache a stable prefix, one production per index") {
  auto counter = std::make_shared<int>(0);
  Stream s = Stream::from_producer([counter](std::vector<Nat>& cache) {
    ++*counter;
    cache.push_back(Nat(cache.size() * 10));
  });
  CHECK(s.at(std::uint64_t(5)) == 50);
  CHECK(*counter == 6);
  CHECK(s.at(std::uint64_t(3)) == 30);
  CHECK(*counter == 6);  // cached, not reproduced
  CHECK(s.produced() == 6);
  Stream copy = s;  // shares the cache
  CHECK(copy.at(std::uint64_t(5)) == 50);
  CHECK(*counter == 6);
}

TEST_CASE("producer demand past the step budget fails loudly") {
  Stream silent = Stream::from_producer([](std::vector<Nat>&) {}, 100);
  CHECK_THROWS_AS(silent.at(std::uint64_t(0)), FuelExhausted);
}

TEST_CASE("interleave places p on even and q on odd positions") {
  CHECK(testing::same_prefix(Stream::interleave(Stream::zeros(), Stream::zeros()),
                             Stream::zeros(), 64));

  Stream id = Stream::from_rule([](const Nat& i) { return i; });
  Stream succ = Stream::from_rule([](const Nat& i) { return i + 1; });
  CHECK(Stream::interleave(id, succ).at(std::uint64_t(5)) == 3);
}

TEST_CASE("deinterleave inverts interleave on prefixes") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    Stream p = testing::random_periodic(rng), q = testing::random_periodic(rng);
    auto [p2, q2] = deinterleave(Stream::interleave(p, q));
    CHECK(testing::same_prefix(p, p2, 64));
    CHECK(testing::same_prefix(q, q2, 64));
  }
}

TEST_CASE("periodic and affine tails answer at huge indices") {
  Stream s = Stream::periodic({Nat(7)}, {Nat(1), Nat(2)});
  Nat huge = pow2(100) + 1;
  CHECK(s.at(huge) == 1);  // (huge-1) even offset into the period
  Stream a = Stream::affine_tail({}, Nat(5), Nat(3));
  CHECK(a.at(huge) == Nat(5) + huge * 3);
}
