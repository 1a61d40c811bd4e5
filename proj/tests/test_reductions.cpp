#include "doctest.h"
#include "helpers.hpp"
#include "sepkit/reductions.hpp"
#include "sepkit/seqcode.hpp"

using namespace sepkit;

namespace {

OracleRealizer rule_oracle(std::string problem, std::function<Nat(const Nat&)> rule) {
  OracleRealizer g;
  g.problem_id = std::move(problem);
  g.instance_class = "test rule";
  g.realize = [rule](const Stream&) { return Stream::from_rule(rule); };
  return g;
}

}  // namespace

TEST_CASE("range <= c1") {
  Reduction r = range_le_c1();
  SUBCASE("the identity stream has full range") {
    Stream id = Stream::from_rule([](const Nat& i) { return i; });
    OracleRealizer g = rule_oracle("c1", [](const Nat&) { return Nat(0); });
    Stream out = apply_reduction(r, g).realize(id);
    for (std::uint64_t n = 0; n < 32; ++n) CHECK(out.at(n) == 1);
  }
  SUBCASE("doubling gives the even numbers") {
    Stream dbl = Stream::from_rule([](const Nat& i) { return i * 2; });
    OracleRealizer g = rule_oracle("c1", [](const Nat& n) { return Nat(n % 2 == 0 ? 0 : 1); });
    Stream out = apply_reduction(r, g).realize(dbl);
    for (std::uint64_t n = 0; n < 50; ++n) CHECK(out.at(n) == (n % 2 == 0 ? 1 : 0));
  }
  SUBCASE("planted ranges match exactly below the bound") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      PlantedInstance inst = gen_range(seed);
      const auto& plant = std::any_cast<const RangePlant&>(inst.data);
      OracleRealizer solver = apply_reduction(r, r.planted_oracle(inst));
      Stream out = solver.realize(inst.name);
      for (std::uint64_t n = 0; n < 50; ++n)
        CHECK(out.at(n) == (plant.head_values.count(n) ? 1 : 0));
      CHECK(range_problem().verify(inst.name, out, 64) != Verdict::Reject);
    }
  }
}

TEST_CASE("c1 <= range") {
  Reduction r = c1_le_range();
  SUBCASE("the zero stream has trivial c1") {
    OracleRealizer g = rule_oracle("range", [](const Nat& v) -> Nat {
      auto nj = seqcode::try_unpair(v);
      if (!nj) return 1;              // off-grid values name themselves
      return nj->second == 0 ? 0 : 1;  // no witness column is ever hit
    });
    Stream out = apply_reduction(r, g).realize(Stream::zeros());
    for (std::uint64_t n = 0; n < 32; ++n) CHECK(out.at(n) == 1);
  }
  SUBCASE("H(p) is injective on a long prefix") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 100; ++t) {
      Stream p = testing::random_periodic(rng, 1);  // binary noise
      Stream h = r.H.apply(p);
      std::set<std::string> seen;
      for (std::uint64_t i = 0; i < 10000; ++i)
        CHECK(seen.insert(h.at(i).str()).second);
    }
  }
  SUBCASE("planted instances with later witnesses still match ck") {
    // p(<n,m>) = 1 iff target(n) = 0 and m = w(n) with w(n) <= 5
    Stream target = Stream::periodic({}, {Nat(0), Nat(1), Nat(0), Nat(0)});
    Stream witness_at = Stream::periodic({}, {Nat(3), Nat(0), Nat(5), Nat(1)});
    Stream p = Stream::from_rule([target, witness_at](const Nat& code) -> Nat {
      auto nm = seqcode::try_unpair(code);
      if (!nm) return 0;
      return (target.at(nm->first) == 0 && nm->second == witness_at.at(nm->first)) ? 1
                                                                                   : 0;
    });
    OracleRealizer g = rule_oracle("range", [target, witness_at](const Nat& v) -> Nat {
      auto nj = seqcode::try_unpair(v);
      if (!nj) return 1;
      const Nat& n = nj->first;
      const Nat& j = nj->second;
      if (j == 0) return target.at(n) == 0 ? 1 : 0;
      if (target.at(n) == 0 && j == witness_at.at(n) + 1) return 0;
      return 1;
    });
    Stream out = apply_reduction(r, g).realize(p);
    for (std::uint64_t n = 0; n < 20; ++n) {
      CHECK(out.at(n) == target.at(std::uint64_t(n)));
      CHECK(Nat(ck_value(p, n, 1, 6)) == target.at(std::uint64_t(n)));
    }
  }
}

TEST_CASE("sup <= c1 recovers suprema through the dyadic cut") {
  Reduction r = sup_le_c1();
  auto check_sup = [&](std::uint64_t seed) {
    PlantedInstance inst = gen_sup(seed);
    const auto& plant = std::any_cast<const SupPlant&>(inst.data);
    OracleRealizer solver = apply_reduction(r, r.planted_oracle(inst));
    CReal recovered = CReal::from_name(solver.realize(inst.name));
    CHECK((recovered.approx(16) - plant.sup).abs() <= Rational::dyadic(1, 16));
  };
  for (std::uint64_t seed = 0; seed < 10; ++seed) check_sup(seed);

  SUBCASE("constant zero sequence") {
    SupPlant plant;
    plant.values = {Rational(0)};
    plant.sup = Rational(0);
    Stream name = sup_instance_stream(plant);
    OracleRealizer g = rule_oracle(
        "c1", [](const Nat& a) { return Nat(rat_enum::value(a) < Rational(0) ? 0 : 1); });
    CReal recovered = CReal::from_name(apply_reduction(r, g).realize(name));
    CHECK(recovered.approx(16).abs() <= Rational::dyadic(1, 16));
  }
}

TEST_CASE("range <= sup through exact geometric sums") {
  Reduction r = range_le_sup();
  SUBCASE("identity stream: everything is in range") {
    Stream id = Stream::from_rule([](const Nat& i) { return i; });
    OracleRealizer g;
    g.problem_id = "sup";
    g.realize = [](const Stream&) { return CReal(Rational(1)).name(); };
    Stream out = apply_reduction(r, g).realize(id);
    for (std::uint64_t n = 0; n < 32; ++n) CHECK(out.at(n) == 1);
  }
  SUBCASE("doubling: evens exactly, via the exact sup 2/3") {
    Stream dbl = Stream::from_rule([](const Nat& i) { return i * 2; });
    OracleRealizer g;
    g.problem_id = "sup";
    g.realize = [](const Stream&) { return CReal(Rational(2, 3)).name(); };
    Stream out = apply_reduction(r, g).realize(dbl);
    for (std::uint64_t n = 0; n < 40; ++n) CHECK(out.at(n) == (n % 2 == 0 ? 1 : 0));
  }
  SUBCASE("planted small ranges agree with brute force") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      PlantedInstance inst = gen_range(seed);
      const auto& plant = std::any_cast<const RangePlant&>(inst.data);
      Stream out = apply_reduction(r, r.planted_oracle(inst)).realize(inst.name);
      for (std::uint64_t n = 0; n < 40; ++n)
        CHECK(out.at(n) == (plant.in_range(Nat(n)) ? 1 : 0));
    }
  }
}

TEST_CASE("sep <= c1: the oracle answer is already a separator") {
  Reduction r = sep_le_c1();
  SUBCASE("evens versus odds") {
    Stream evens = Stream::from_rule([](const Nat& i) { return i * 2; });
    Stream odds = Stream::from_rule([](const Nat& i) { return i * 2 + 1; });
    Stream pq = Stream::interleave(evens, odds);
    OracleRealizer g = rule_oracle("c1", [](const Nat& n) { return n % 2; });
    Stream out = apply_reduction(r, g).realize(pq);
    CHECK(verify_separator(pq, out, 64) == Verdict::Accept);
    for (std::uint64_t i = 0; i < 16; ++i) CHECK(out.at(2 * i) == 0);
  }
  SUBCASE("planted instances verify at depth 64") {
    for (std::uint64_t seed = 0; seed < 100; ++seed)
      CHECK(check_reduction(r, sep_problem(), gen_sep(seed), 64) == Verdict::Accept);
  }
  SUBCASE("the output need not equal the planted separator off the ranges") {
    PlantedInstance inst = gen_sep(9, 16);
    Stream out = apply_reduction(r, r.planted_oracle(inst)).realize(inst.name);
    CHECK(verify_separator(inst.name, out, 64) == Verdict::Accept);
    // beyond the bound the oracle says 1 while the plant says 0: both valid
    CHECK(out.at(std::uint64_t(1000)) == 1);
  }
}

TEST_CASE("sep <= path2 builds the separation tree") {
  Reduction r = sep_le_path2();
  SUBCASE("depth-2 members once both constraints are visible") {
    Stream p = Stream::constant(Nat(0));
    Stream q = Stream::constant(Nat(1));
    Stream chi = r.H.apply(Stream::interleave(p, q));
    for (std::uint64_t a = 0; a <= 1; ++a)
      for (std::uint64_t b = 0; b <= 1; ++b) {
        Nat code = seqcode::encode(FinSeq{Nat(a), Nat(b)});
        CHECK(chi.at(code) == ((a == 0 && b == 1) ? 1 : 0));
      }
  }
  SUBCASE("membership only shrinks as more of (p,q) is seen") {
    std::mt19937_64 rng(43);
    for (int t = 0; t < 30; ++t) {
      PlantedInstance inst = gen_sep(rng() % 500, 16);
      BinaryTreeView T = separation_tree(inst.name.even_part(), inst.name.odd_part());
      std::vector<Nat> node;
      for (int d = 0; d < 10; ++d) {
        node.push_back(Nat(rng() % 2));
        if (!T.member(node)) {
          std::vector<Nat> longer = node;
          longer.push_back(Nat(rng() % 2));
          CHECK_FALSE(T.member(longer));
        }
      }
    }
  }
  SUBCASE("leftmost separators pass the checker at depth 64") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      PlantedInstance inst = gen_sep(seed);
      const auto& plant = std::any_cast<const SepPlant&>(inst.data);
      SepPlant pl = plant;
      Stream leftmost = Stream::from_rule([pl](const Nat& i) -> Nat {
        return (i < Nat(pl.value_bound) && pl.solution.at(i) == 1) ? 1 : 0;
      });
      CHECK(verify_separator(inst.name, leftmost, 64) == Verdict::Accept);
      // and it is a path of the separation tree
      BinaryTreeView T = separation_tree(plant.p, plant.q);
      std::vector<Nat> prefix;
      for (std::uint64_t i = 0; i < 32; ++i) {
        prefix.push_back(leftmost.at(i));
        CHECK(T.member(prefix));
      }
    }
  }
  SUBCASE("planted suite at depth 64") {
    for (std::uint64_t seed = 0; seed < 50; ++seed)
      CHECK(check_reduction(r, sep_problem(), gen_sep(seed), 64) == Verdict::Accept);
  }
}

TEST_CASE("path2 <= sep enumerates phi and rebuilds paths") {
  Reduction r = path2_le_sep();
  SUBCASE("full tree: both enumerations are pure padding") {
    Stream pq = r.H.apply(TreeAutomaton::full().char_stream());
    Stream p = pq.even_part(), q = pq.odd_part();
    for (std::uint64_t i = 0; i < 40; ++i) {
      CHECK(p.at(i) == 0);
      CHECK(q.at(i) == 1);
    }
  }
  SUBCASE("forcing the first bit pushes code(lambda)+2 into ran(q)") {
    Stream pq = r.H.apply(TreeAutomaton::first_bit_one().char_stream());
    Stream q = pq.odd_part();
    bool seen = false;
    for (std::uint64_t i = 0; i < 600 && !seen; ++i) seen = q.at(i) == 2;
    CHECK(seen);
    // and any separator of the image forces k(r)(0) = 1
    OracleRealizer g = r.planted_oracle(gen_path2(0));  // rebuilt below
  }
  SUBCASE("end-to-end on automaton instances, depth 32") {
    for (std::uint64_t seed = 0; seed < 30; ++seed)
      CHECK(check_reduction(r, path2_problem(), gen_path2(seed), 32) ==
            Verdict::Accept);
  }
}

TEST_CASE("the separator oracle on first-bit-one sends lambda to one") {
  TreeAutomaton aut = TreeAutomaton::first_bit_one();
  PlantedInstance inst;
  inst.problem_id = "path2";
  inst.name = aut.char_stream();
  inst.data = Path2Plant{aut};
  Reduction r = path2_le_sep();
  OracleRealizer g = r.planted_oracle(inst);
  Stream rsep = g.realize(inst.name);
  CHECK(rsep.at(seqcode::encode({}) + 2) == 1);
  Stream out = apply_reduction(r, g).realize(inst.name);
  CHECK(out.at(std::uint64_t(0)) == 1);
}

TEST_CASE("bounded and binary paths translate both ways") {
  SUBCASE("bound 2 roundtrips to itself") {
    Stream path = Stream::periodic({}, {Nat(1), Nat(0), Nat(0)});
    Stream two = Stream::constant(Nat(2));
    Stream back = decode_bounded_path(encode_bounded_path(path, two), two);
    CHECK(testing::same_prefix(path, back, 32));
  }
  SUBCASE("the full 3-bounded tree: leftmost image path decodes high") {
    // under blocks 0^v 1 0^(b-1-v), the lexicographically least binary path
    // postpones its mark as long as possible, so it decodes to b-1 everywhere
    Stream three = Stream::constant(Nat(3));
    BoundedTreeView full;
    full.bound = three;
    full.member = [](const std::vector<Nat>& node) {
      for (const auto& v : node)
        if (v > 2) return false;
      return true;
    };
    std::vector<Nat> bits;
    for (int step = 0; step < 12; ++step) {
      bits.push_back(Nat(0));
      if (!bounded_block_image_member(full, bits)) {
        bits.back() = 1;
        REQUIRE(bounded_block_image_member(full, bits));
      }
    }
    Stream bitstream = Stream::periodic(bits, {Nat(0)});
    Stream decoded = decode_bounded_path(bitstream, three);
    for (std::uint64_t i = 0; i < 4; ++i) CHECK(decoded.at(i) == 2);
    // the image of the all-zero bounded path still decodes to all zeros
    Stream zero_image = encode_bounded_path(Stream::zeros(), three);
    CHECK(testing::same_prefix(decode_bounded_path(zero_image, three),
                               Stream::zeros(), 8));
  }
  SUBCASE("planted unique paths decode exactly, depth 16") {
    PlantedInstance inst = gen_pathB(4);  // even seed: unique-path family
    const auto& plant = std::any_cast<const PathBPlant&>(inst.data);
    Stream image = encode_bounded_path(plant.path, plant.tree.bound);
    Stream back = decode_bounded_path(image, plant.tree.bound);
    CHECK(testing::same_prefix(back, plant.path, 16));
  }
  SUBCASE("image membership tracks the bounded tree") {
    PlantedInstance inst = gen_pathB(4);
    const auto& plant = std::any_cast<const PathBPlant&>(inst.data);
    Stream image = encode_bounded_path(plant.path, plant.tree.bound);
    std::vector<Nat> bits;
    for (std::uint64_t i = 0; i < 24; ++i) {
      bits.push_back(image.at(i));
      CHECK(bounded_block_image_member(plant.tree, bits));
    }
  }
  SUBCASE("reduction soundness both ways") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      CHECK(check_reduction(pathB_le_path2(), pathB_problem(), gen_pathB(seed), 32) ==
            Verdict::Accept);
      CHECK(check_reduction(path2_le_pathB(), path2_problem(), gen_path2(seed), 32) ==
            Verdict::Accept);
    }
  }
}

TEST_CASE("malformed bounded instances are flagged") {
  Stream zero_bound = Stream::constant(Nat(0));
  CHECK_THROWS_AS(
      decode_bounded_path(Stream::zeros(), zero_bound).at(std::uint64_t(0)),
      MalformedName);
}

TEST_CASE("tilde tree approximates the transformer from above") {
  SUBCASE("a constant full-tree machine projects onto the base") {
    // emits 1 at every chi position: nothing is ever excluded
    Machine full_chi{MachineDesc::affine(Nat(0), Nat(1))};
    TreeAutomaton base = TreeAutomaton::no_consecutive_ones();
    BinaryTreeView T = BinaryTreeView::from_automaton(base);
    BinaryTreeView tilde = tilde_tree(T, full_chi);
    std::mt19937_64 rng(47);
    for (int t = 0; t < 200; ++t) {
      std::vector<Nat> node;
      std::uint64_t len = rng() % 16;
      for (std::uint64_t i = 0; i < len; ++i) node.push_back(Nat(rng() % 2));
      std::vector<Nat> even;
      for (std::size_t i = 0; i < node.size(); i += 2) even.push_back(node[i]);
      CHECK(tilde.member(node) == T.member(even));
    }
  }
  SUBCASE("longer prefixes only exclude more") {
    std::mt19937_64 rng(48);
    for (int t = 0; t < 100; ++t) {
      Machine m{random_machine_desc(rng)};
      std::vector<Nat> t0;
      std::uint64_t len = rng() % 16;
      for (std::uint64_t i = 0; i < len; ++i) t0.push_back(Nat(rng() % 2));
      std::vector<Nat> t1;
      std::uint64_t len1 = rng() % 8;
      for (std::uint64_t i = 0; i < len1; ++i) t1.push_back(Nat(rng() % 2));
      // membership of (t0,t1) interleaved, then with a longer first half
      auto interleave_pad = [](const std::vector<Nat>& a, const std::vector<Nat>& b) {
        std::vector<Nat> out;
        for (std::size_t i = 0; i < a.size(); ++i) {
          out.push_back(a[i]);
          if (i < b.size()) out.push_back(b[i]);
        }
        return out;
      };
      BinaryTreeView everything;
      everything.member = [](const std::vector<Nat>&) { return true; };
      BinaryTreeView tilde = tilde_tree(everything, m);
      std::vector<Nat> longer = t0;
      longer.push_back(Nat(rng() % 2));
      if (t1.size() <= t0.size() && !tilde.member(interleave_pad(t0, t1)))
        CHECK_FALSE(tilde.member(interleave_pad(longer, t1)));
    }
  }
}

TEST_CASE("single-call composition matches the two-call baseline") {
  Reduction composed = sep_compose(
      identity_reduction("path2"),
      [] {
        Reduction r;
        r.id = "repath_le_path2";
        r.source = "repath";
        r.target = "path2";
        r.H = Machine("prefix_tree", [](Stream x) {
          BinaryTreeView v;
          v.member = [x](const std::vector<Nat>& t) {
            for (std::size_t i = 0; i < t.size(); ++i)
              if (t[i] > 1 || t[i] != x.at(std::uint64_t(i))) return false;
            return true;
          };
          return v.char_stream();
        });
        r.K = Machine(MachineDesc::odds());
        return r;
      }(),
      [](const PlantedInstance&, const Stream& p0) { return p0; });

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PlantedInstance inst = gen_path2(seed);
    const auto& plant = std::any_cast<const Path2Plant&>(inst.data);
    Stream planted_path = plant.aut.leftmost_path();
    OracleRealizer g;
    g.problem_id = "path2";
    g.instance_class = "interleaved";
    Stream doubled = Stream::interleave(planted_path, planted_path);
    auto calls = std::make_shared<int>(0);
    g.realize = [doubled, calls](const Stream&) {
      ++*calls;
      return doubled;
    };
    Stream out = apply_reduction(composed, g).realize(inst.name);
    CHECK(testing::same_prefix(out, planted_path, 16));
    CHECK(*calls == 1);
    CHECK(path2_problem().verify(inst.name, out, 16) == Verdict::Accept);
  }
}

TEST_CASE("the interleaved composite tree accepts the doubled planted path") {
  PlantedInstance inst = gen_path2(3);
  const auto& plant = std::any_cast<const Path2Plant&>(inst.data);
  BinaryTreeView T = BinaryTreeView::from_automaton(plant.aut);
  Machine prefix_tree("i", [](Stream p0) {
    BinaryTreeView v;
    v.member = [p0](const std::vector<Nat>& t) {
      for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] != p0.at(std::uint64_t(i))) return false;
      return true;
    };
    return v.char_stream();
  });
  BinaryTreeView tilde = tilde_tree(T, prefix_tree);
  Stream p = plant.aut.leftmost_path();
  std::vector<Nat> node;  // interleave(p, p) prefix, checked level by level
  for (std::uint64_t i = 0; i < 32; ++i) {
    node.push_back(p.at(i / 2));
    CHECK(tilde.member(node));
  }
}

TEST_CASE("round-chained tree reductions stay solution-preserving") {
  // path2 -> sep -> path2: outputs verify for the original tree (they need
  // not reproduce the leftmost path, only land inside the tree)
  Reduction round = chain_reductions(path2_le_sep(), sep_le_path2());
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    PlantedInstance inst = gen_path2(seed);
    const auto& plant = std::any_cast<const Path2Plant&>(inst.data);
    TreeAutomaton aut = plant.aut;
    // a separator of the image instance is itself a path of its
    // separation tree, so it answers the inner path2 oracle call
    OracleRealizer g = path2_le_sep().planted_oracle(inst);
    Stream separator = g.realize(inst.name);
    OracleRealizer inner;
    inner.problem_id = "path2";
    inner.instance_class = "separation trees of phi enumerations";
    inner.realize = [separator](const Stream&) { return separator; };
    Stream out = apply_reduction(round, inner).realize(inst.name);
    CHECK(path2_problem().verify(inst.name, out, 32) == Verdict::Accept);
  }
}
