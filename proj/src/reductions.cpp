#include "sepkit/reductions.hpp"

#include <set>

#include "sepkit/seqcode.hpp"

namespace sepkit {

namespace {

Stream flip_bits(Stream w) {
  return Stream::from_rule([w](const Nat& i) -> Nat {
    Nat b = w.at(i);
    if (b > 1) throw MalformedName("expected a binary stream");
    return 1 - b;
  });
}

const SepPlant& sep_plant(const PlantedInstance& inst) {
  return std::any_cast<const SepPlant&>(inst.data);
}

}  // namespace

Reduction identity_reduction(const std::string& problem_id) {
  Reduction r;
  r.id = problem_id + "_id";
  r.source = r.target = problem_id;
  r.H = Machine(MachineDesc::echo());
  r.K = Machine(MachineDesc::odds());
  return r;
}

// ---- Range <= C1 and back ---------------------------------------------------

Reduction range_le_c1() {
  Reduction r;
  r.id = "range_le_c1";
  r.source = "range";
  r.target = "c1";
  r.H = Machine("range_le_c1.H", [](Stream p) {
    return Stream::from_rule([p](const Nat& code) -> Nat {
      auto nm = seqcode::try_unpair(code);
      if (!nm) return 0;
      return p.at(nm->second) == nm->first ? 1 : 0;
    });
  });
  r.K = Machine("range_le_c1.K",
                [](Stream xw) { return flip_bits(xw.odd_part()); });
  r.planted_oracle = [](const PlantedInstance& inst) {
    const auto& plant = std::any_cast<const RangePlant&>(inst.data);
    OracleRealizer g;
    g.problem_id = "c1";
    g.instance_class = "H-images of planted injective streams";
    g.realize = [plant](const Stream&) {
      return Stream::from_rule(
          [plant](const Nat& n) -> Nat { return plant.in_range(n) ? 0 : 1; });
    };
    return g;
  };
  return r;
}

Reduction c1_le_range() {
  Reduction r;
  r.id = "c1_le_range";
  r.source = "c1";
  r.target = "range";
  r.H = Machine("c1_le_range.H", [](Stream p) {
    // remembers, per n, how far the witness column has been scanned
    struct Scan {
      Nat zeros_verified;
      std::optional<Nat> witness;
    };
    auto scans = std::make_shared<std::map<Nat, Scan>>();
    auto mu = std::make_shared<std::mutex>();
    return Stream::from_rule([p, scans, mu](const Nat& code) -> Nat {
      auto nm = seqcode::try_unpair(code);
      if (!nm) return code;  // off the pair grid: keep injectivity with fresh values
      const Nat& n = nm->first;
      const Nat& m = nm->second;
      if (p.at(code) != 0) {
        std::lock_guard<std::mutex> lk(*mu);
        Scan& s = (*scans)[n];
        while (!s.witness && s.zeros_verified < m) {
          if (p.at(seqcode::pair(n, s.zeros_verified)) != 0)
            s.witness = s.zeros_verified;
          else
            s.zeros_verified += 1;
        }
        if (!(s.witness && *s.witness < m)) return seqcode::pair(n, Nat(0));
      }
      return seqcode::pair(n, m + 1);
    });
  });
  r.K = Machine("c1_le_range.K", [](Stream xw) {
    Stream w = xw.odd_part();
    return Stream::from_rule([w](const Nat& n) -> Nat {
      Nat b = w.at(seqcode::pair(n, Nat(0)));
      if (b > 1) throw MalformedName("range answers must be binary");
      return 1 - b;
    });
  });
  r.planted_oracle = [](const PlantedInstance& inst) {
    const auto& plant = std::any_cast<const C1Plant&>(inst.data);
    OracleRealizer g;
    g.problem_id = "range";
    g.instance_class = "H-images of planted c1 instances";
    Stream target = plant.target;
    g.realize = [target](const Stream&) {
      return Stream::from_rule([target](const Nat& v) -> Nat {
        auto nj = seqcode::try_unpair(v);
        if (!nj) return 1;  // every off-grid value is its own preimage
        const Nat& n = nj->first;
        const Nat& j = nj->second;
        if (j == 0) return target.at(n) == 0 ? 1 : 0;
        if (j == 1 && target.at(n) == 0) return 0;
        return 1;
      });
    };
    return g;
  };
  return r;
}

// ---- Sup <= C1 ---------------------------------------------------------------

Reduction sup_le_c1() {
  Reduction r;
  r.id = "sup_le_c1";
  r.source = "sup";
  r.target = "c1";
  // h(<a,w>) != 0 iff w codes a certificate (n,k) that a_Q(a) < x_n
  r.H = Machine("sup_le_c1.H", [](Stream xs) {
    return Stream::from_rule([xs](const Nat& code) -> Nat {
      auto aw = seqcode::try_unpair(code);
      if (!aw) return 0;
      auto nk = seqcode::try_unpair(aw->second);
      if (!nk || !fits_u64(nk->first) || !fits_u64(nk->second)) return 0;
      Rational alpha = rat_enum::value(aw->first);
      std::uint64_t n = to_u64(nk->first), k = to_u64(nk->second);
      // a certificate at precision k only exists at positions whose codes
      // are at least exponential in k, so this cap can never bind on a
      // feasible demand; it just guards the approximation cost
      if (k > 4096) return 0;
      Rational approx = unpack_real(xs, n).approx(k);
      return approx - Rational::dyadic(1, k) > alpha ? 1 : 0;
    });
  });
  // binary-search the dyadic cut of A = {alpha : exists n, alpha < x_n}
  r.K = Machine("sup_le_c1.K", [](Stream xw) {
    Stream w = xw.odd_part();
    auto member = [w](const Rational& alpha) {
      Nat b = w.at(rat_enum::index_of(alpha));
      if (b > 1) throw MalformedName("c1 answers must be binary");
      return b == 0;
    };
    return Stream::from_rule([member](const Nat& pos) -> Nat {
      std::uint64_t k = to_u64(pos);
      BigInt lo = -1, hi = pow2(k);  // -1/2^k is in A, 1 is not
      while (hi - lo > 1) {
        BigInt mid = (lo + hi) / 2;
        (member(Rational(mid, pow2(k))) ? lo : hi) = mid;
      }
      return rat_enum::index_of(Rational(lo, pow2(k)));
    });
  });
  r.planted_oracle = [](const PlantedInstance& inst) {
    const auto& plant = std::any_cast<const SupPlant&>(inst.data);
    OracleRealizer g;
    g.problem_id = "c1";
    g.instance_class = "H-images of planted bounded sequences";
    Rational sup = plant.sup;
    g.realize = [sup](const Stream&) {
      return Stream::from_rule([sup](const Nat& a) -> Nat {
        return rat_enum::value(a) < sup ? 0 : 1;
      });
    };
    return g;
  };
  return r;
}

// ---- Range <= Sup -------------------------------------------------------------

namespace {

// x_m = sum_{k<=m} 2^-(p(k)+1), exact
Rational geometric_prefix(const Stream& p, std::uint64_t m) {
  Rational s(0);
  for (std::uint64_t k = 0; k <= m; ++k) {
    Nat v = p.at(k);
    s += Rational(1, pow2(to_u64(v) + 1));
  }
  return s;
}

}  // namespace

Reduction range_le_sup() {
  Reduction r;
  r.id = "range_le_sup";
  r.source = "range";
  r.target = "sup";
  r.H = Machine("range_le_sup.H", [](Stream p) {
    return pack_real_seq([p](std::uint64_t m) {
      return CReal(geometric_prefix(p, m));
    });
  });
  r.K = Machine("range_le_sup.K", [](Stream xw) {
    Stream p = xw.even_part();
    CReal x = CReal::from_name(xw.odd_part());
    // the prefix sums are dyadic; carrying explicit exponents keeps the cut
    // scan at shift-and-add cost instead of gcd-normalized rationals
    struct Dyadic {
      BigInt num;
      std::uint64_t exp = 0;  // value = num / 2^exp
    };
    auto sums = std::make_shared<std::vector<Dyadic>>();
    auto mu = std::make_shared<std::mutex>();
    auto extend_to = [p, sums, mu](std::uint64_t k) {
      std::lock_guard<std::mutex> lk(*mu);
      if (sums->empty()) sums->push_back(Dyadic{BigInt(1), to_u64(p.at(0)) + 1});
      while (sums->size() <= k) {
        std::uint64_t e = to_u64(p.at(sums->size())) + 1;
        Dyadic s = sums->back();
        std::uint64_t top = std::max(s.exp, e);
        s.num = (s.num << (top - s.exp)) + (BigInt(1) << (top - e));
        s.exp = top;
        sums->push_back(std::move(s));
      }
      return (*sums)[k];
    };
    return Stream::from_rule([p, x, extend_to](const Nat& npos) -> Nat {
      std::uint64_t n = to_u64(npos);
      Rational threshold = Rational::dyadic(1, n + 1);
      // locate the least k with x - x_k safely below 2^-(n+1) using one
      // upper approximation, then certify that k through creal_cmp;
      // precisions are bucketed so positions share the deep approximation
      std::uint64_t P = ((n + 4 + 511) / 512) * 512;
      Rational x_hi = x.approx(P) + Rational::dyadic(1, P);
      // dyadic upper bound on x_hi - threshold/4 at exponent P+4
      Rational gap = x_hi - threshold * Rational(1, 4);
      BigInt lhs_num = (gap * Rational(pow2(P + 4))).ceil();
      std::uint64_t lhs_exp = P + 4;
      // x <= x_hi, so x_hi - x_k < threshold/4 is itself the disjoint-interval
      // certificate that x - x_k lies strictly under the threshold
      std::uint64_t q = 0;
      for (std::uint64_t k = 0;; ++k) {
        Dyadic s = extend_to(k);
        std::uint64_t top = std::max(lhs_exp, s.exp);
        if ((lhs_num << (top - lhs_exp)) < (s.num << (top - s.exp))) {
          q = k;
          break;
        }
        if (k > 16 * (n + 4) + 64)
          throw FuelExhausted("sup name never certified the tail bound");
      }
      for (std::uint64_t m = 0; m <= q; ++m)
        if (p.at(m) == npos) return 1;
      return 0;
    });
  });
  r.planted_oracle = [](const PlantedInstance& inst) {
    const auto& plant = std::any_cast<const RangePlant&>(inst.data);
    OracleRealizer g;
    g.problem_id = "sup";
    g.instance_class = "geometric sums of planted injective streams";
    Rational sup = plant.exact_sup_of_geometric();
    g.realize = [sup](const Stream&) { return CReal(sup).name(); };
    return g;
  };
  return r;
}

Reduction c1_le_sup() {
  Reduction r = chain_reductions(c1_le_range(), range_le_sup());
  r.id = "c1_le_sup";
  r.planted_oracle = [](const PlantedInstance& inst) {
    const auto& plant = std::any_cast<const C1Plant&>(inst.data);
    OracleRealizer g;
    g.problem_id = "sup";
    g.instance_class = "geometric sums of translated c1 instances";
    Stream target = plant.target;
    // sup = 1 - sum over values missing from ran(H(p)); the missing set is
    // {<n,0> : target(n)=1} united with {<n,1> : target(n)=0}
    g.realize = [target](const Stream&) {
      CReal sup = CReal::from_approx([target](std::uint64_t k) {
        // values >= k+2 contribute at most 2^-(k+2) in total; the subtracted
        // mass is dyadic, so accumulate with shifts and normalize once
        std::uint64_t cap = k + 2;
        BigInt mass = 0;
        std::uint64_t exp = 0;
        for (std::uint64_t v = 0; v < cap; ++v) {
          auto nj = seqcode::try_unpair(Nat(v));
          if (!nj) continue;
          bool missing = (nj->second == 0 && target.at(nj->first) == 1) ||
                         (nj->second == 1 && target.at(nj->first) == 0);
          if (!missing) continue;
          std::uint64_t e = v + 1;
          std::uint64_t top = std::max(exp, e);
          mass = (mass << (top - exp)) + (BigInt(1) << (top - e));
          exp = top;
        }
        return Rational(pow2(exp) - mass, pow2(exp));
      });
      return sup.name();
    };
    return g;
  };
  return r;
}

// ---- Sep <= C1 -----------------------------------------------------------------

Reduction sep_le_c1() {
  Reduction r;
  r.id = "sep_le_c1";
  r.source = "sep";
  r.target = "c1";
  r.H = Machine("sep_le_c1.H", [](Stream pq) {
    Stream p = pq.even_part();
    return Stream::from_rule([p](const Nat& code) -> Nat {
      auto nm = seqcode::try_unpair(code);
      if (!nm) return 0;
      return p.at(nm->second) == nm->first ? 1 : 0;
    });
  });
  r.K = Machine(MachineDesc::odds());  // the oracle answer is the separator
  r.planted_oracle = [](const PlantedInstance& inst) {
    SepPlant plant = sep_plant(inst);
    OracleRealizer g;
    g.problem_id = "c1";
    g.instance_class = "H-images of planted separation instances";
    g.realize = [plant](const Stream&) {
      return Stream::from_rule([plant](const Nat& n) -> Nat {
        bool in_ran_p = n < Nat(plant.value_bound) && plant.solution.at(n) == 0;
        return in_ran_p ? 0 : 1;
      });
    };
    return g;
  };
  return r;
}

// ---- Sep <=> Path_2 --------------------------------------------------------------

BinaryTreeView separation_tree(const Stream& p, const Stream& q) {
  BinaryTreeView T;
  T.member = [p, q](const std::vector<Nat>& t) {
    for (const auto& b : t)
      if (b > 1) return false;
    std::uint64_t len = t.size();
    for (std::uint64_t j = 0; j < len; ++j) {
      Nat pj = p.at(j), qj = q.at(j);
      if (pj < Nat(len) && t[to_u64(pj)] != 0) return false;
      if (qj < Nat(len) && t[to_u64(qj)] != 1) return false;
    }
    return true;
  };
  return T;
}

Reduction sep_le_path2() {
  Reduction r;
  r.id = "sep_le_path2";
  r.source = "sep";
  r.target = "path2";
  r.H = Machine("sep_le_path2.H", [](Stream pq) {
    return separation_tree(pq.even_part(), pq.odd_part()).char_stream();
  });
  r.K = Machine(MachineDesc::odds());
  r.planted_oracle = [](const PlantedInstance& inst) {
    SepPlant plant = sep_plant(inst);
    OracleRealizer g;
    g.problem_id = "path2";
    g.instance_class = "separation trees of planted instances";
    // the planted separator is itself an infinite path of h(p,q)
    g.realize = [plant](const Stream&) { return plant.solution; };
    return g;
  };
  return r;
}

bool phi_at(const BinaryTreeView& T, const std::vector<Nat>& s, std::uint64_t i,
            std::uint64_t n) {
  std::vector<Nat> with = s, without = s;
  with.push_back(Nat(i));
  without.push_back(Nat(1 - i));
  return theta_search(T, n, with) && !theta_search(T, n, without);
}

// ran(p_T) = {code(s)+2 : phi_T(s,0)} u {0} and symmetrically for q_T with 1;
// dovetailed over (s,n) in increasing SeqCode-pair order, padding when the
// current pair yields no new witness
Stream phi_enumeration_stream(const BinaryTreeView& T, std::uint64_t bit, Nat padding) {
  auto en = std::make_shared<TupleEnumerator>(2);
  auto seen = std::make_shared<std::set<Nat>>();
  return Stream::from_producer([T, bit, padding, en, seen](std::vector<Nat>& cache) {
    FinSeq pair = en->next();
    const Nat& scode = pair[0];
    const Nat& n = pair[1];
    FinSeq s = seqcode::decode(scode);
    for (const auto& b : s)
      if (b > 1) {
        cache.push_back(padding);
        return;
      }
    if (!fits_u64(n) || seen->count(scode)) {
      cache.push_back(padding);
      return;
    }
    if (phi_at(T, s, bit, to_u64(n))) {
      seen->insert(scode);
      cache.push_back(scode + 2);
    } else {
      cache.push_back(padding);
    }
  });
}

Reduction path2_le_sep() {
  Reduction r;
  r.id = "path2_le_sep";
  r.source = "path2";
  r.target = "sep";
  r.H = Machine("path2_le_sep.H", [](Stream chi) {
    BinaryTreeView T = BinaryTreeView::from_char_stream(chi);
    return Stream::interleave(phi_enumeration_stream(T, 0, Nat(0)),
                              phi_enumeration_stream(T, 1, Nat(1)));
  });
  // k(r)(m) = r(k(r)[m] + 2), reading the prefix as its code
  r.K = Machine("path2_le_sep.K", [](Stream xw) {
    Stream rsep = xw.odd_part();
    auto prefix = std::make_shared<std::vector<Nat>>();
    return Stream::from_producer([rsep, prefix](std::vector<Nat>& cache) {
      Nat bit = rsep.at(seqcode::encode(*prefix) + 2);
      if (bit > 1) throw MalformedName("separator must be binary");
      prefix->push_back(bit);
      cache.push_back(bit);
    });
  });
  r.planted_oracle = [](const PlantedInstance& inst) {
    const auto& plant = std::any_cast<const Path2Plant&>(inst.data);
    OracleRealizer g;
    g.problem_id = "sep";
    g.instance_class = "phi-enumerations of automaton trees";
    TreeAutomaton aut = plant.aut;
    g.realize = [aut](const Stream&) {
      return Stream::from_rule([aut](const Nat& c) -> Nat {
        if (c == 0) return 0;
        if (c == 1) return 1;
        FinSeq s = seqcode::decode(c - 2);
        for (const auto& b : s)
          if (b > 1) return 0;
        if (aut.phi(s, 1)) return 1;
        if (aut.phi(s, 0)) return 0;
        return 0;
      });
    };
    return g;
  };
  return r;
}

// ---- Path_B <=> Path_2 -------------------------------------------------------------

Stream encode_bounded_path(const Stream& path, const Stream& bound) {
  auto level = std::make_shared<std::uint64_t>(0);
  return Stream::from_producer([path, bound, level](std::vector<Nat>& cache) {
    std::uint64_t i = (*level)++;
    std::uint64_t b = to_u64(bound.at(i));
    std::uint64_t v = to_u64(path.at(i));
    if (v >= b) throw MalformedName("bounded path exceeds its level bound");
    for (std::uint64_t j = 0; j < b; ++j) cache.push_back(Nat(j == v ? 1 : 0));
  });
}

Stream decode_bounded_path(const Stream& bits, const Stream& bound) {
  auto state = std::make_shared<std::pair<std::uint64_t, std::uint64_t>>(0, 0);
  return Stream::from_producer([bits, bound, state](std::vector<Nat>& cache) {
    auto& [level, consumed] = *state;
    std::uint64_t b = to_u64(bound.at(level));
    std::optional<std::uint64_t> one_at;
    for (std::uint64_t j = 0; j < b; ++j) {
      Nat bit = bits.at(consumed + j);
      if (bit > 1) throw MalformedName("block coding must be binary");
      if (bit == 1) {
        if (one_at) throw MalformedName("two marks in one block");
        one_at = j;
      }
    }
    if (!one_at) throw MalformedName("block without a mark");
    consumed += b;
    ++level;
    cache.push_back(Nat(*one_at));
  });
}

// membership in the binary image: complete blocks decode to a T-member and
// any partial block still admits a compatible child
bool bounded_block_image_member(const BoundedTreeView& T, const std::vector<Nat>& bits) {
  constexpr std::uint64_t scan_cap = 1u << 20;
  std::vector<Nat> decoded;
  std::size_t pos = 0;
  std::uint64_t level = 0;
  while (pos < bits.size()) {
    Nat bigb = T.bound.at(level);
    if (bigb == 0) return false;
    if (!fits_u64(bigb) || to_u64(bigb) > scan_cap)
      throw FuelExhausted("level bound too large to scan block coding");
    std::uint64_t b = to_u64(bigb);
    std::uint64_t len = std::min<std::uint64_t>(b, bits.size() - pos);
    std::optional<std::uint64_t> one_at;
    for (std::uint64_t j = 0; j < len; ++j) {
      if (bits[pos + j] > 1) return false;
      if (bits[pos + j] == 1) {
        if (one_at) return false;
        one_at = j;
      }
    }
    decoded.push_back(Nat(one_at ? *one_at : 0));
    if (len < b) {
      // partial block: some admissible value must extend the decoded prefix
      if (one_at) {
        decoded.back() = Nat(*one_at);
        return T.member(decoded);
      }
      for (std::uint64_t v = len; v < b; ++v) {
        decoded.back() = Nat(v);
        if (T.member(decoded)) return true;
      }
      // a mark already inside the seen zeros is impossible; len zeros force v >= len
      return false;
    }
    if (!one_at) return false;
    decoded.back() = Nat(*one_at);
    if (!T.member(decoded)) return false;
    pos += b;
    ++level;
  }
  return true;
}

Reduction pathB_le_path2() {
  Reduction r;
  r.id = "pathB_le_path2";
  r.source = "pathB";
  r.target = "path2";
  r.H = Machine("pathB_le_path2.H", [](Stream name) {
    BoundedTreeView T = BoundedTreeView::from_name(name);
    BinaryTreeView image;
    image.member = [T](const std::vector<Nat>& bits) {
      return bounded_block_image_member(T, bits);
    };
    return image.char_stream();
  });
  r.K = Machine("pathB_le_path2.K", [](Stream xw) {
    Stream bound = xw.even_part().odd_part();
    return decode_bounded_path(xw.odd_part(), bound);
  });
  r.planted_oracle = [](const PlantedInstance& inst) {
    const auto& plant = std::any_cast<const PathBPlant&>(inst.data);
    OracleRealizer g;
    g.problem_id = "path2";
    g.instance_class = "block codings of planted bounded trees";
    Stream path = plant.path, bound = plant.tree.bound;
    g.realize = [path, bound](const Stream&) {
      return encode_bounded_path(path, bound);
    };
    return g;
  };
  return r;
}

Reduction path2_le_pathB() {
  Reduction r;
  r.id = "path2_le_pathB";
  r.source = "path2";
  r.target = "pathB";
  r.H = Machine("path2_le_pathB.H", [](Stream chi) {
    return Stream::interleave(chi, Stream::constant(Nat(2)));
  });
  r.K = Machine(MachineDesc::odds());
  r.planted_oracle = [](const PlantedInstance& inst) {
    const auto& plant = std::any_cast<const Path2Plant&>(inst.data);
    OracleRealizer g;
    g.problem_id = "pathB";
    g.instance_class = "binary trees viewed as 2-bounded trees";
    TreeAutomaton aut = plant.aut;
    g.realize = [aut](const Stream&) { return aut.leftmost_path(); };
    return g;
  };
  return r;
}

// ---- iterated application ------------------------------------------------------

BinaryTreeView tilde_tree(const BinaryTreeView& T, const Machine& f) {
  BinaryTreeView out;
  BinaryTreeView base = T;
  Machine m = f;
  out.member = [base, m](const std::vector<Nat>& t) {
    std::vector<Nat> t0, t1;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] > 1) return false;
      (i % 2 == 0 ? t0 : t1).push_back(t[i]);
    }
    if (!base.member(t0)) return false;
    // t1 must not be excluded by f within |t0| steps on t0^000...
    Stream padded = Stream::prepend(t0, Stream::zeros());
    FinSeq emitted = m.fueled_run(padded, t0.size());
    std::vector<Nat> v;
    for (std::size_t i = 0; i <= t1.size(); ++i) {
      Nat code = seqcode::encode(std::vector<Nat>(t1.begin(), t1.begin() + i));
      if (code < Nat(emitted.size()) && emitted[to_u64(code)] == 0) return false;
    }
    return true;
  };
  return out;
}

Reduction sep_compose(
    const Reduction& r_f, const Reduction& r_g,
    std::function<Stream(const PlantedInstance&, const Stream&)> middle_path) {
  if (r_f.target != "path2" || r_g.target != "path2")
    throw UsageError("sep_compose needs two reductions to path2");
  Reduction out;
  out.id = "compose(" + r_f.id + "," + r_g.id + ")";
  out.source = r_g.source + "." + r_f.source;
  out.target = "path2";
  Machine Hf = r_f.H, Kf = r_f.K, Hg = r_g.H, Kg = r_g.K;
  out.H = Machine(out.id + ".H", [Hf, Kf, Hg](Stream x) {
    BinaryTreeView T = BinaryTreeView::from_char_stream(Hf.apply(x));
    // i(x, p) = h_g(k_f(x, p)), approximated from above along the prefix
    Machine i_x("i_x", [x, Kf, Hg](Stream p) {
      return Hg.apply(Kf.apply(Stream::interleave(x, p)));
    });
    return tilde_tree(T, i_x).char_stream();
  });
  out.K = Machine(out.id + ".K", [Kf, Kg](Stream xw) {
    Stream x = xw.even_part();
    Stream path = xw.odd_part();
    Stream y = Kf.apply(Stream::interleave(x, path.even_part()));
    return Kg.apply(Stream::interleave(y, path.odd_part()));
  });
  if (middle_path) {
    auto f_oracle = r_f.planted_oracle;
    out.planted_oracle = [f_oracle, middle_path](const PlantedInstance& inst) {
      OracleRealizer g;
      g.problem_id = "path2";
      g.instance_class = "interleaved composition trees";
      Stream p0 = f_oracle(inst).realize(inst.name);
      Stream p1 = middle_path(inst, p0);
      g.realize = [p0, p1](const Stream&) { return Stream::interleave(p0, p1); };
      return g;
    };
  }
  return out;
}

}  // namespace sepkit
