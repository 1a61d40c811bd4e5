#include "doctest.h"
#include "helpers.hpp"
#include "sepkit/machine.hpp"

using namespace sepkit;

namespace {
bool is_prefix(const FinSeq& a, const FinSeq& b) {
  if (a.size() > b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}
}  // namespace

TEST_CASE("identity machine echoes the fueled prefix") {
  Machine id{MachineDesc::echo()};
  Stream p = Stream::periodic({}, {Nat(4), Nat(9)});
  FinSeq out = id.fueled_run(p, 10);
  CHECK(out.size() == 10);
  CHECK(out == p.prefix(10));
}

TEST_CASE("a +1 machine at fuel 3 on constant 4s emits three 5s") {
  Machine inc{MachineDesc::affine(Nat(1), Nat(1))};
  FinSeq out = inc.fueled_run(Stream::constant(Nat(4)), 3);
  CHECK(out == fs({5, 5, 5}));
}

TEST_CASE("fueled output is prefix-monotone in fuel") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 500; ++t) {
    Machine m{random_machine_desc(rng)};
    Stream p = testing::random_periodic(rng);
    std::uint64_t f1 = rng() % 24, f2 = f1 + rng() % 24;
    CHECK(is_prefix(m.fueled_run(p, f1), m.fueled_run(p, f2)));
  }
}

TEST_CASE("fueled runs are deterministic") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 100; ++t) {
    Machine m{random_machine_desc(rng)};
    Stream p = testing::random_periodic(rng);
    CHECK(m.fueled_run(p, 17) == m.fueled_run(p, 17));
  }
}

TEST_CASE("apply streams the machine against demand") {
  Machine dbl{MachineDesc::affine(Nat(2), Nat(0))};
  Stream out = dbl.apply(Stream::periodic({}, {Nat(3)}));
  CHECK(out.at(std::uint64_t(5)) == 6);
}

TEST_CASE("machine descriptions round-trip through their codes") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 100; ++t) {
    MachineDesc d = random_machine_desc(rng);
    MachineDesc back = MachineDesc::from_code(d.code());
    Stream p = testing::random_periodic(rng);
    CHECK(Machine(d).fueled_run(p, 16) == Machine(back).fueled_run(p, 16));
  }
}

TEST_CASE("curry of project-to-second evaluates to the argument") {
  // input z (+) x; Odds picks out x
  Machine proj2{MachineDesc::odds()};
  std::mt19937_64 rng(24);
  Stream z = testing::random_periodic(rng);
  Stream x = testing::random_periodic(rng);
  Stream name = curry(proj2).apply(z);
  Stream result = evaluate(name, x);
  CHECK(testing::same_prefix(result, x, 64));
}

TEST_CASE("evaluate on the stream-addition machine adds pointwise") {
  Machine add{MachineDesc::pairwise_add()};
  Stream name = curry(add).apply(Stream::constant(Nat(1)));
  Stream out = evaluate(name, Stream::constant(Nat(2)));
  CHECK(testing::same_prefix(out, Stream::constant(Nat(3)), 32));
}

TEST_CASE("curry then uncurry is extensionally the original machine") {
  std::mt19937_64 rng(25);
  for (int t = 0; t < 100; ++t) {
    MachineDesc d = random_machine_desc(rng);
    Machine m{d};
    Machine roundtrip = uncurry(curry(m));
    Stream z = testing::random_periodic(rng);
    Stream x = testing::random_periodic(rng);
    Stream pair = Stream::interleave(z, x);
    Stream a = m.apply(pair);
    Stream b = roundtrip.apply(pair);
    for (std::uint64_t i = 0; i < 32; ++i) CHECK(a.at(i) == b.at(i));
  }
}
