#include "sepkit/problems.hpp"

#include <algorithm>
#include <map>

#include "sepkit/hyperspace.hpp"
#include "sepkit/seqcode.hpp"

namespace sepkit {

Stream pack_real_seq(std::function<CReal(std::uint64_t)> xs) {
  auto memo = std::make_shared<std::map<std::uint64_t, Stream>>();
  auto mu = std::make_shared<std::mutex>();
  return Stream::from_rule([xs, memo, mu](const Nat& code) -> Nat {
    auto pq = seqcode::try_unpair(code);
    if (!pq || !fits_u64(pq->first)) return 0;
    std::uint64_t n = to_u64(pq->first);
    Stream nm;
    {
      std::lock_guard<std::mutex> lk(*mu);
      auto it = memo->find(n);
      if (it == memo->end()) it = memo->emplace(n, xs(n).name()).first;
      nm = it->second;
    }
    return nm.at(pq->second);
  });
}

CReal unpack_real(const Stream& s, std::uint64_t n) {
  return CReal::from_name(Stream::from_rule(
      [s, n](const Nat& i) { return s.at(seqcode::pair(Nat(n), i)); }));
}

// ---- verifiers -------------------------------------------------------------

Verdict verify_separator(const Stream& pq, const Stream& r, std::uint64_t depth) {
  Stream p = pq.even_part(), q = pq.odd_part();
  for (std::uint64_t n = 0; n < depth; ++n) {
    Nat rp = r.at(p.at(n)), rq = r.at(q.at(n));
    if (rp > 1 || rq > 1) return Verdict::Reject;
    if (rp != 0 || rq != 1) return Verdict::Reject;
  }
  return Verdict::Accept;
}

Problem sep_problem() {
  Problem f;
  f.id = "sep";
  f.verify = verify_separator;
  f.domain_check = [](const Stream& pq, std::uint64_t fuel) {
    Stream p = pq.even_part(), q = pq.odd_part();
    for (std::uint64_t n = 0; n < fuel; ++n)
      for (std::uint64_t m = 0; m < fuel; ++m)
        if (p.at(n) == q.at(m)) return Verdict::Reject;
    return Verdict::Accept;
  };
  return f;
}

Problem path2_problem() {
  Problem f;
  f.id = "path2";
  f.verify = [](const Stream& chi, const Stream& y, std::uint64_t depth) {
    std::vector<Nat> prefix;
    for (std::uint64_t n = 0; n < depth; ++n) {
      Nat b = y.at(n);
      if (b > 1) return Verdict::Reject;
      prefix.push_back(b);
      if (chi.at(seqcode::encode(prefix)) != 1) return Verdict::Reject;
    }
    return Verdict::Accept;
  };
  return f;
}

Problem pathB_problem() {
  Problem f;
  f.id = "pathB";
  f.verify = [](const Stream& name, const Stream& y, std::uint64_t depth) {
    Stream chi = name.even_part(), b = name.odd_part();
    std::vector<Nat> prefix;
    for (std::uint64_t n = 0; n < depth; ++n) {
      Nat v = y.at(n);
      if (v >= b.at(n)) return Verdict::Reject;
      prefix.push_back(v);
      if (chi.at(seqcode::encode(prefix)) != 1) return Verdict::Reject;
    }
    return Verdict::Accept;
  };
  return f;
}

Problem range_problem() {
  Problem f;
  f.id = "range";
  f.verify = [](const Stream& p, const Stream& y, std::uint64_t depth) -> Verdict {
    Verdict out = Verdict::Accept;
    for (std::uint64_t n = 0; n < depth; ++n) {
      Nat v = y.at(n);
      if (v > 1) return Verdict::Reject;
      bool witness = false;
      for (std::uint64_t m = 0; m < depth && !witness; ++m)
        if (p.at(m) == Nat(n)) witness = true;
      if (v == 0 && witness) return Verdict::Reject;
      if (v == 1 && !witness) out = Verdict::NeedMoreDepth;
    }
    return out;
  };
  return f;
}

Problem sup_problem() {
  Problem f;
  f.id = "sup";
  f.verify = [](const Stream& x, const Stream& y, std::uint64_t depth) -> Verdict {
    std::uint64_t k = std::min<std::uint64_t>(depth, 20);
    CReal Y = CReal::from_name(y);
    Rational ay = Y.approx(k + 2);
    Rational best(-1);
    for (std::uint64_t n = 0; n < depth; ++n) {
      Rational axn = unpack_real(x, n).approx(k + 2);
      if (axn - ay > Rational::dyadic(1, k + 1)) return Verdict::Reject;
      best = rat_max(best, axn);
    }
    // leastness needs a high witness; lacking one is only inconclusive
    if (best < ay - Rational::dyadic(1, k)) return Verdict::NeedMoreDepth;
    return Verdict::Accept;
  };
  return f;
}

Problem c1_problem() {
  Problem f;
  f.id = "c1";
  f.verify = [](const Stream& x, const Stream& y, std::uint64_t depth) -> Verdict {
    Verdict out = Verdict::Accept;
    for (std::uint64_t n = 0; n < depth; ++n) {
      Nat v = y.at(n);
      if (v > 1) return Verdict::Reject;
      bool witness = false;
      for (std::uint64_t m = 0; m < depth && !witness; ++m)
        if (x.at(seqcode::pair(Nat(n), Nat(m))) != 0) witness = true;
      if (v == 1 && witness) return Verdict::Reject;
      if (v == 0 && !witness) out = Verdict::NeedMoreDepth;
    }
    return out;
  };
  return f;
}

Problem omega_problem() {
  Problem f;
  f.id = "omega";
  f.verify = [](const Stream& p, const Stream& y, std::uint64_t depth) -> Verdict {
    Nat i = y.at(std::uint64_t(0));
    if (i > 1) return Verdict::Reject;
    bool nonzero = false;
    for (std::uint64_t n = 0; n < depth && !nonzero; ++n)
      if (p.at(n) != 0) nonzero = true;
    if (i == 0) return nonzero ? Verdict::Reject : Verdict::Accept;
    return nonzero ? Verdict::Accept : Verdict::NeedMoreDepth;
  };
  return f;
}

int ck_value(const Stream& p, std::uint64_t n, std::uint64_t k,
             std::uint64_t witness_bound) {
  if (k == 0) throw UsageError("ck_value needs k >= 1");
  std::vector<Nat> tuple(k + 1);
  tuple[0] = Nat(n);
  // quantifier over n_j sits at tuple position k+1-j; outermost (j = k) is
  // existential, alternating inward
  std::function<bool(std::uint64_t)> holds = [&](std::uint64_t j) -> bool {
    if (j == 0) return p.at(seqcode::encode(tuple)) != 0;
    bool existential = ((k - j) % 2 == 0);
    for (std::uint64_t v = 0; v < witness_bound; ++v) {
      tuple[k + 1 - j] = Nat(v);
      bool inner = holds(j - 1);
      if (existential && inner) return true;
      if (!existential && !inner) return false;
    }
    return !existential;
  };
  return holds(k) ? 0 : 1;
}

Stream regular_path_oracle(const TreeAutomaton& t) { return t.leftmost_path(); }

// ---- Heine-Borel ------------------------------------------------------------

Nat interval_code(const Rational& lo, const Rational& hi) {
  return seqcode::pair(rat_enum::index_of(lo), rat_enum::index_of(hi));
}

std::pair<Rational, Rational> decode_interval(const Nat& code) {
  auto pq = seqcode::try_unpair(code);
  if (!pq) throw MalformedName("interval code is not a pair");
  return {rat_enum::value(pq->first), rat_enum::value(pq->second)};
}

namespace {
// greedy chain over open intervals; returns chosen indices when [0,1] is covered
std::optional<std::vector<std::size_t>> chain_cover(
    const std::vector<std::pair<Rational, Rational>>& iv) {
  Rational reach(0);
  std::vector<std::size_t> chosen;
  for (std::size_t guard = 0; guard <= iv.size(); ++guard) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < iv.size(); ++i)
      if (iv[i].first < reach && iv[i].second > reach)
        if (!best || iv[i].second > iv[*best].second) best = i;
    if (!best) return std::nullopt;
    chosen.push_back(*best);
    reach = iv[*best].second;
    if (reach > Rational(1)) return chosen;
  }
  return std::nullopt;
}
}  // namespace

FinSeq finite_subcover(const Stream& cover, std::uint64_t fuel) {
  std::vector<std::pair<Rational, Rational>> iv;
  for (std::uint64_t j = 0; j < fuel; ++j) {
    iv.push_back(decode_interval(cover.at(j)));
    if (auto chosen = chain_cover(iv)) {
      FinSeq out;
      for (auto i : *chosen) out.push_back(Nat(i));
      return out;
    }
  }
  throw FuelExhausted("no finite subcover found in the searched prefix");
}

bool covers_unit_interval(std::vector<std::pair<Rational, Rational>> intervals) {
  return chain_cover(intervals).has_value();
}

// ---- planted generators ------------------------------------------------------

// ---- geometric selection instances ------------------------------------------

Stream sel_instance_name(const SelPlant& plant) {
  // part 0: the kappa enumeration of the ambient interval; part 1: the
  // complement balls of A, shifted by one so 0 can mark padding
  Stream covers = unit_interval_compact().cover_codes;
  ClosedMinus A = real_segment_complement(plant.lo, plant.hi, plant.shuffle);
  Stream balls = Stream::from_rule([A](const Nat& i) -> Nat {
    auto b = A.ball(to_u64(i));
    return b ? ball_code(*b) + 1 : 0;
  });
  return pack_parts({covers, balls});
}

Problem sel_problem() {
  Problem f;
  f.id = "sel";
  f.verify = [](const Stream& x, const Stream& y, std::uint64_t depth) -> Verdict {
    std::uint64_t prec = std::min<std::uint64_t>(depth + 4, 24);
    CReal point = CReal::from_name(y);
    Rational a = point.approx(prec);
    Stream balls = part_of(x, 1);
    for (std::uint64_t i = 0; i < depth; ++i) {
      Nat code = balls.at(i);
      if (code == 0) continue;
      Ball b = decode_ball(code - 1);
      Rational gap = (a - rat_enum::value(b.center)).abs();
      // certified inside an excluded ball: reject
      if (gap + Rational::dyadic(1, prec - 1) < b.radius) return Verdict::Reject;
    }
    // stay inside the ambient interval as well
    if (a > Rational(1) + Rational::dyadic(1, prec - 1)) return Verdict::Reject;
    if (a < -Rational::dyadic(1, prec - 1)) return Verdict::Reject;
    return Verdict::Accept;
  };
  return f;
}

PlantedInstance gen_sel(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9ddfea08eb382d69ull + 41);
  SelPlant plant;
  std::uint64_t a = 1 + rng() % 10, b = 1 + rng() % 10;
  if (a > b) std::swap(a, b);
  plant.lo = Rational(a, 12);
  plant.hi = Rational(b, 12);
  plant.target = (plant.lo + plant.hi) * Rational(1, 2);
  plant.shuffle = rng() % 64;
  PlantedInstance inst;
  inst.problem_id = "sel";
  inst.name = sel_instance_name(plant);
  inst.data = plant;
  return inst;
}

OracleRealizer sel_planted_oracle(const PlantedInstance& inst) {
  const auto& plant = std::any_cast<const SelPlant&>(inst.data);
  OracleRealizer g;
  g.problem_id = "sel";
  g.instance_class = "planted segments inside the unit interval";
  SelPlant pl = plant;
  g.realize = [pl](const Stream&) {
    SelTree tree(real_line(), unit_interval_compact(),
                 real_segment_complement(pl.lo, pl.hi, pl.shuffle));
    Rational target = pl.target;
    Stream path = Stream::from_rule([target](const Nat& lvl) -> Nat {
      std::uint64_t level = to_u64(lvl);
      Rational pos = target * Rational(pow2(level + 1));
      BigInt j = (pos + Rational(1, 2)).floor();
      if (j < 0) j = 0;
      if (j > pow2(level + 1)) j = pow2(level + 1);
      return Nat(j);
    });
    return sel_point(tree, path);
  };
  return g;
}

bool RangePlant::in_range(const Nat& n) const {
  if (n >= Nat(tail_base)) return true;
  return fits_u64(n) && head_values.count(to_u64(n)) > 0;
}

Rational RangePlant::exact_sup_of_geometric() const {
  Rational s(0);
  for (auto v : head_values) s += Rational::dyadic(1, v + 1);
  return s + Rational::dyadic(1, tail_base);  // tail sums to exactly 2^-base
}

PlantedInstance gen_sep(std::uint64_t seed, std::uint64_t value_bound) {
  std::mt19937_64 rng(seed * 2654435761u + 17);
  std::vector<Nat> bits;
  std::vector<std::uint64_t> zeros, ones;
  while (zeros.empty() || ones.empty()) {
    bits.clear();
    zeros.clear();
    ones.clear();
    for (std::uint64_t n = 0; n < value_bound; ++n) {
      std::uint64_t b = rng() % 2;
      bits.push_back(Nat(b));
      (b == 0 ? zeros : ones).push_back(n);
    }
  }
  std::vector<Nat> pv(zeros.begin(), zeros.end()), qv(ones.begin(), ones.end());
  SepPlant plant;
  plant.p = Stream::periodic({}, pv);
  plant.q = Stream::periodic({}, qv);
  plant.solution = Stream::periodic(bits, {Nat(0)});
  plant.value_bound = value_bound;
  plant.p_period = pv;
  plant.q_period = qv;
  plant.sol_head = bits;
  PlantedInstance inst;
  inst.problem_id = "sep";
  inst.name = Stream::interleave(plant.p, plant.q);
  inst.data = plant;
  return inst;
}

PlantedInstance gen_path2(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 6364136223846793005ull + 1442695040888963407ull);
  Path2Plant plant{TreeAutomaton::random_live(rng)};
  PlantedInstance inst;
  inst.problem_id = "path2";
  inst.name = plant.aut.char_stream();
  inst.data = plant;
  return inst;
}

PathBPlant materialize_pathB_plant(PathBPlant plant) {
  if (plant.from_automaton) {
    Stream bound = Stream::periodic({}, plant.bound_period);
    plant.tree = BoundedTreeView::from_automaton(plant.aut, bound);
    plant.path = plant.aut.leftmost_path();
  } else {
    Stream bound = Stream::periodic({}, plant.bound_period);
    Stream path = Stream::periodic({}, plant.path_period);
    plant.tree.bound = bound;
    plant.tree.member = [bound, path](const std::vector<Nat>& node) {
      for (std::size_t i = 0; i < node.size(); ++i)
        if (node[i] >= bound.at(std::uint64_t(i))) return false;
      for (std::size_t i = 0; i + 1 < node.size(); ++i)
        if (node[i] != path.at(std::uint64_t(i))) return false;
      return true;
    };
    plant.path = path;
  }
  return plant;
}

PlantedInstance gen_pathB(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 3);
  PathBPlant plant;
  if (seed % 2 == 0) {
    // a unique planted path plus dead one-step bushes
    std::size_t L = 2 + rng() % 3;
    for (std::size_t i = 0; i < L; ++i) {
      std::uint64_t b = 2 + rng() % 3;
      plant.bound_period.push_back(Nat(b));
      plant.path_period.push_back(Nat(rng() % b));
    }
  } else {
    plant.from_automaton = true;
    std::uint32_t arity = 2 + rng() % 2;
    plant.aut = TreeAutomaton::random_live(rng, arity);
    plant.bound_period = {Nat(arity)};
  }
  plant = materialize_pathB_plant(std::move(plant));
  PlantedInstance inst;
  inst.problem_id = "pathB";
  inst.name = plant.tree.name();
  inst.data = plant;
  return inst;
}

PlantedInstance gen_range(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0xb5ad4eceda1ce2a9ull + 11);
  RangePlant plant;
  std::size_t n = 3 + rng() % 8;
  while (plant.head_values.size() < n) plant.head_values.insert(rng() % 50);
  plant.tail_base = 1000 + rng() % 1000;
  plant.head_len = plant.head_values.size();
  plant.head_order.assign(plant.head_values.begin(), plant.head_values.end());
  std::shuffle(plant.head_order.begin(), plant.head_order.end(), rng);
  PlantedInstance inst;
  inst.problem_id = "range";
  inst.name = Stream::affine_tail(plant.head_order, Nat(plant.tail_base), Nat(1));
  inst.data = plant;
  return inst;
}

Stream sup_instance_stream(const SupPlant& plant) {
  if (plant.geometric) {
    // x_n = 1 - 2^-n, increasing with supremum 1
    return pack_real_seq(
        [](std::uint64_t n) { return CReal(Rational(1) - Rational::dyadic(1, n)); });
  }
  auto values = std::make_shared<std::vector<Rational>>(plant.values);
  return pack_real_seq(
      [values](std::uint64_t n) { return CReal((*values)[n % values->size()]); });
}

PlantedInstance gen_sup(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x2545f4914f6cdd1dull + 7);
  PlantedInstance inst;
  inst.problem_id = "sup";
  SupPlant plant;
  if (seed % 2 == 0) {
    std::size_t k = 2 + rng() % 4;
    Rational sup(0);
    for (std::size_t i = 0; i < k; ++i) {
      Rational v(rng() % 16, 16);
      plant.values.push_back(v);
      sup = rat_max(sup, v);
    }
    plant.sup = sup;
  } else {
    plant.geometric = true;
    plant.sup = Rational(1);
  }
  inst.name = sup_instance_stream(plant);
  inst.data = plant;
  return inst;
}

Stream c1_instance_stream(const Stream& target) {
  return Stream::from_rule([target](const Nat& code) -> Nat {
    auto pq = seqcode::try_unpair(code);
    if (!pq) return 0;
    return (pq->second == 0 && target.at(pq->first) == 0) ? 1 : 0;
  });
}

PlantedInstance gen_c1(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0xda942042e4dd58b5ull + 5);
  C1Plant plant;
  for (int i = 0; i < 16; ++i) plant.target_head.push_back(Nat(rng() % 2));
  for (int i = 0; i < 4; ++i) plant.target_period.push_back(Nat(rng() % 2));
  plant.target = Stream::periodic(plant.target_head, plant.target_period);
  plant.witness_bound = 1;
  PlantedInstance inst;
  inst.problem_id = "c1";
  inst.name = c1_instance_stream(plant.target);
  inst.data = plant;
  return inst;
}

PlantedInstance gen_cover(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x94d049bb133111ebull + 13);
  // 1/20-grid breakpoints, overlapping closed chain across [0,1]
  std::set<std::uint64_t> cuts;
  while (cuts.size() < 4) cuts.insert(2 + rng() % 16);
  std::vector<Rational> bp;
  bp.emplace_back(0);
  for (auto c : cuts) bp.emplace_back(c, 20);
  bp.emplace_back(1);
  std::vector<std::pair<Rational, Rational>> cover;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i)
    cover.emplace_back(bp[i] - Rational(1, 20), bp[i + 1] + Rational(1, 20));
  std::vector<std::pair<Rational, Rational>> junk;
  for (int i = 0; i < 10; ++i) {
    Rational a(1 + rng() % 17, 20);
    junk.emplace_back(a, a + Rational(1 + rng() % 3, 20));
  }
  CoverPlant plant;
  std::vector<std::pair<Rational, Rational>> head = cover;
  head.insert(head.end(), junk.begin(), junk.end());
  std::shuffle(head.begin(), head.end(), rng);
  plant.intervals = head;
  std::vector<Nat> head_codes, junk_codes;
  for (const auto& [a, b] : head) head_codes.push_back(interval_code(a, b));
  for (const auto& [a, b] : junk) junk_codes.push_back(interval_code(a, b));
  PlantedInstance inst;
  inst.problem_id = "cover";
  inst.name = Stream::periodic(head_codes, junk_codes);
  inst.data = plant;
  return inst;
}

// ---- planted oracles -----------------------------------------------------------

OracleRealizer sep_planted_oracle(const PlantedInstance& inst) {
  const auto& plant = std::any_cast<const SepPlant&>(inst.data);
  OracleRealizer g;
  g.problem_id = "sep";
  g.instance_class = "planted separation instances";
  Stream solution = plant.solution;
  g.realize = [solution](const Stream&) { return solution; };
  return g;
}

OracleRealizer path2_planted_oracle(const PlantedInstance& inst) {
  const auto& plant = std::any_cast<const Path2Plant&>(inst.data);
  OracleRealizer g;
  g.problem_id = "path2";
  g.instance_class = "automaton-presented infinite binary trees";
  TreeAutomaton aut = plant.aut;
  g.realize = [aut](const Stream&) { return aut.leftmost_path(); };
  return g;
}

OracleRealizer pathB_planted_oracle(const PlantedInstance& inst) {
  const auto& plant = std::any_cast<const PathBPlant&>(inst.data);
  OracleRealizer g;
  g.problem_id = "pathB";
  g.instance_class = "planted bounded trees";
  Stream path = plant.path;
  g.realize = [path](const Stream&) { return path; };
  return g;
}

CReal sup_oracle(const Stream& xs_name, const SupPlant& plant) {
  // spot-check the metadata against a few listed values
  for (std::uint64_t n = 0; n < 6; ++n) {
    CReal xn = unpack_real(xs_name, n);
    if (creal_cmp(xn, CReal(plant.sup), 16) == Cmp::gt)
      throw MalformedName("planted sup lies below a listed value");
  }
  return CReal(plant.sup);
}

}  // namespace sepkit
