#include "sepkit/banach.hpp"

#include <map>
#include <mutex>

namespace sepkit {

RatInterval abs_interval(const RatInterval& x) {
  if (x.lo > Rational(0)) return x;
  if (x.hi < Rational(0)) return {-x.hi, -x.lo};
  return {Rational(0), rat_max(-x.lo, x.hi)};
}

std::vector<Rational> combo_coeffs(const FinSeq& s) {
  std::vector<Rational> out;
  out.reserve(s.size());
  for (const auto& idx : s) out.push_back(rat_enum::value(idx));
  return out;
}

FinSeq coeffs_to_combo(std::vector<Rational> coeffs) {
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  FinSeq s;
  s.reserve(coeffs.size());
  for (const auto& c : coeffs) s.push_back(rat_enum::index_of(c));
  return s;
}

FinSeq combo_add(const FinSeq& s, const FinSeq& t) {
  std::vector<Rational> a = combo_coeffs(s), b = combo_coeffs(t);
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return coeffs_to_combo(std::move(a));
}

FinSeq combo_sub(const FinSeq& s, const FinSeq& t) {
  std::vector<Rational> a = combo_coeffs(s), b = combo_coeffs(t);
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return coeffs_to_combo(std::move(a));
}

FinSeq combo_scale(const Rational& a, const FinSeq& s) {
  std::vector<Rational> c = combo_coeffs(s);
  for (auto& x : c) x *= a;
  return coeffs_to_combo(std::move(c));
}

BanachSpace::BanachSpace(PseudoNorm pn) : pn_(std::move(pn)) {}
BanachSpace::BanachSpace(PseudoNorm pn, Stream given_facts)
    : pn_(std::move(pn)), facts_(std::move(given_facts)) {}

CReal BanachSpace::combo_norm(const FinSeq& s) const {
  if (pn_.eval_exact) {
    if (auto r = pn_.eval_exact(s)) return CReal(*r);
  }
  return pn_.eval(s);
}

std::optional<Rational> BanachSpace::combo_norm_exact(const FinSeq& s) const {
  return pn_.eval_exact ? pn_.eval_exact(s) : std::nullopt;
}

CReal BanachSpace::combo_dist(const FinSeq& s, const FinSeq& t) const {
  return combo_norm(combo_sub(s, t));
}

FinSeq BanachSpace::e_combo(std::uint64_t n) const {
  FinSeq s(n, Nat(0));
  s.push_back(Nat(1));
  return s;
}

Stream BanachSpace::fact_stream() const {
  if (facts_) return *facts_;
  BanachSpace self = *this;
  auto en = std::make_shared<TupleEnumerator>(2, 60);
  return Stream::from_producer([self, en](std::vector<Nat>& cache) {
    FinSeq tf = en->next();  // (fact tuple code, certification fuel)
    FinSeq fact = seqcode::decode(tf[0]);
    if (fact.size() != 4 || !fits_u64(tf[1])) return;
    Rational lo = rat_enum::value(fact[0]);
    Rational hi = rat_enum::value(fact[3]);
    CReal d = self.combo_dist(seqcode::decode(fact[1]), seqcode::decode(fact[2]));
    std::uint64_t fuel = to_u64(tf[1]);
    if (creal_cmp(d, CReal(lo), fuel) == Cmp::gt &&
        creal_cmp(d, CReal(hi), fuel) == Cmp::lt)
      cache.push_back(tf[0]);
  });
}

struct CPoint::Impl {
  std::mutex mu;
  std::function<FinSeq(std::uint64_t)> rep;
  std::map<std::uint64_t, FinSeq> cache;
  std::optional<FinSeq> exact;
};

CPoint CPoint::from_combo(FinSeq combo) {
  CPoint p;
  p.impl_ = std::make_shared<Impl>();
  p.impl_->exact = combo;
  p.impl_->rep = [combo](std::uint64_t) { return combo; };
  return p;
}

CPoint CPoint::from_reps(std::function<FinSeq(std::uint64_t)> rep) {
  CPoint p;
  p.impl_ = std::make_shared<Impl>();
  p.impl_->rep = std::move(rep);
  return p;
}

FinSeq CPoint::rep(std::uint64_t i) const {
  std::lock_guard<std::mutex> lk(impl_->mu);
  auto it = impl_->cache.find(i);
  if (it != impl_->cache.end()) return it->second;
  FinSeq r = impl_->rep(i);
  impl_->cache.emplace(i, r);
  return r;
}

std::optional<FinSeq> CPoint::exact_combo() const { return impl_->exact; }

CPoint a_e(const BanachSpace&, const FinSeq& s) { return CPoint::from_combo(s); }

CPoint point_add(const BanachSpace&, const CPoint& x, const CPoint& y) {
  if (x.exact_combo() && y.exact_combo())
    return CPoint::from_combo(combo_add(*x.exact_combo(), *y.exact_combo()));
  CPoint a = x, b = y;
  return CPoint::from_reps(
      [a, b](std::uint64_t i) { return combo_add(a.rep(i + 1), b.rep(i + 1)); });
}

CPoint point_scale(const BanachSpace& X, const CReal& a, const CPoint& x) {
  if (auto ar = a.exact(); ar && x.exact_combo())
    return CPoint::from_combo(combo_scale(*ar, *x.exact_combo()));
  Stream aname = a.name();
  Rational a0 = rat_enum::value(aname.at(std::uint64_t(0))).abs();
  Rational norm0 = point_norm(X, x).approx(0).abs() + Rational(1);
  Rational bound = a0 + norm0 + Rational(2);
  std::uint64_t k = bit_length(bound.ceil()) + 1;
  CPoint p = x;
  return CPoint::from_reps([aname, p, k](std::uint64_t i) {
    return combo_scale(rat_enum::value(aname.at(Nat(k + i))), p.rep(k + i));
  });
}

CReal point_norm(const BanachSpace& X, const CPoint& x) {
  if (auto c = x.exact_combo()) return X.combo_norm(*c);
  BanachSpace sp = X;
  CPoint p = x;
  return CReal::from_approx([sp, p](std::uint64_t j) {
    return sp.combo_norm(p.rep(j + 2)).approx(j + 2);
  });
}

CReal point_dist(const BanachSpace& X, const CPoint& x, const CPoint& y) {
  if (x.exact_combo() && y.exact_combo())
    return X.combo_dist(*x.exact_combo(), *y.exact_combo());
  BanachSpace sp = X;
  CPoint a = x, b = y;
  return CReal::from_approx([sp, a, b](std::uint64_t j) {
    return sp.combo_dist(a.rep(j + 2), b.rep(j + 2)).approx(j + 3);
  });
}

// ---- built-ins -------------------------------------------------------------

namespace {

PseudoNorm from_exact(std::string id,
                      std::function<Rational(const std::vector<Rational>&)> formula,
                      std::function<RatInterval(const std::vector<RatInterval>&)> ival,
                      std::function<std::vector<Rational>(const std::vector<Rational>&)>
                          effective) {
  PseudoNorm pn;
  pn.id = std::move(id);
  pn.eval_exact = [formula](const FinSeq& s) -> std::optional<Rational> {
    return formula(combo_coeffs(s));
  };
  auto ex = pn.eval_exact;
  pn.eval = [ex](const FinSeq& s) { return CReal(*ex(s)); };
  pn.eval_interval = std::move(ival);
  pn.effective_coords = std::move(effective);
  return pn;
}

Rational coeff_at(const std::vector<Rational>& c, std::size_t i) {
  return i < c.size() ? c[i] : Rational(0);
}
RatInterval interval_at(const std::vector<RatInterval>& c, std::size_t i) {
  return i < c.size() ? c[i] : RatInterval{Rational(0), Rational(0)};
}

}  // namespace

PseudoNorm max_two_generator_norm() {
  return from_exact(
      "max2",
      [](const std::vector<Rational>& c) {
        return rat_max(coeff_at(c, 0).abs(), coeff_at(c, 1).abs());
      },
      [](const std::vector<RatInterval>& c) {
        RatInterval a = abs_interval(interval_at(c, 0));
        RatInterval b = abs_interval(interval_at(c, 1));
        return RatInterval{rat_max(a.lo, b.lo), rat_max(a.hi, b.hi)};
      },
      [](const std::vector<Rational>& c) {
        return std::vector<Rational>{coeff_at(c, 0), coeff_at(c, 1)};
      });
}

PseudoNorm collapsed_third_generator_norm() {
  return from_exact(
      "collapse3",
      [](const std::vector<Rational>& c) {
        return rat_max((coeff_at(c, 0) + coeff_at(c, 2)).abs(),
                       (coeff_at(c, 1) + coeff_at(c, 2)).abs());
      },
      [](const std::vector<RatInterval>& c) {
        RatInterval c0 = interval_at(c, 0), c1 = interval_at(c, 1),
                    c2 = interval_at(c, 2);
        RatInterval a = abs_interval({c0.lo + c2.lo, c0.hi + c2.hi});
        RatInterval b = abs_interval({c1.lo + c2.lo, c1.hi + c2.hi});
        return RatInterval{rat_max(a.lo, b.lo), rat_max(a.hi, b.hi)};
      },
      [](const std::vector<Rational>& c) {
        return std::vector<Rational>{coeff_at(c, 0) + coeff_at(c, 2),
                                     coeff_at(c, 1) + coeff_at(c, 2)};
      });
}

PseudoNorm findim_max_norm(std::size_t dim) {
  return from_exact(
      "max" + std::to_string(dim),
      [dim](const std::vector<Rational>& c) {
        Rational m(0);
        for (std::size_t i = 0; i < dim; ++i) m = rat_max(m, coeff_at(c, i).abs());
        return m;
      },
      [dim](const std::vector<RatInterval>& c) {
        RatInterval out{Rational(0), Rational(0)};
        for (std::size_t i = 0; i < dim; ++i) {
          RatInterval a = abs_interval(interval_at(c, i));
          out.lo = rat_max(out.lo, a.lo);
          out.hi = rat_max(out.hi, a.hi);
        }
        return out;
      },
      [dim](const std::vector<Rational>& c) {
        std::vector<Rational> out;
        for (std::size_t i = 0; i < dim; ++i) out.push_back(coeff_at(c, i));
        return out;
      });
}

PseudoNorm findim_weighted_l1_norm(std::vector<Rational> weights) {
  auto w = std::make_shared<std::vector<Rational>>(std::move(weights));
  return from_exact(
      "wl1x" + std::to_string(w->size()),
      [w](const std::vector<Rational>& c) {
        Rational s(0);
        for (std::size_t i = 0; i < w->size(); ++i) s += (*w)[i] * coeff_at(c, i).abs();
        return s;
      },
      [w](const std::vector<RatInterval>& c) {
        RatInterval out{Rational(0), Rational(0)};
        for (std::size_t i = 0; i < w->size(); ++i) {
          RatInterval a = abs_interval(interval_at(c, i));
          out.lo += (*w)[i] * a.lo;
          out.hi += (*w)[i] * a.hi;
        }
        return out;
      },
      [w](const std::vector<Rational>& c) {
        std::vector<Rational> out;
        for (std::size_t i = 0; i < w->size(); ++i) out.push_back((*w)[i] * coeff_at(c, i));
        return out;
      });
}

std::optional<PseudoNorm> builtin_pseudo_norm(const std::string& id) {
  if (id == "max2") return max_two_generator_norm();
  if (id == "collapse3") return collapsed_third_generator_norm();
  if (id.rfind("max", 0) == 0) {
    std::size_t d = std::strtoull(id.c_str() + 3, nullptr, 10);
    if (d > 0 && d <= 16) return findim_max_norm(d);
  }
  return std::nullopt;
}

// ---- functionals ------------------------------------------------------------

Stream functional_table(const PFName& f) {
  auto fn = f.func;
  return Stream::from_rule([fn](const Nat& code) -> Nat {
    auto mk = seqcode::try_unpair(code);
    if (!mk || !fits_u64(mk->second)) return 0;
    CReal v = fn(CPoint::from_combo(seqcode::decode(mk->first)));
    return rat_enum::index_of(v.approx(to_u64(mk->second)));
  });
}

CReal table_value(const Stream& table, const Nat& combo_code) {
  return CReal::from_approx([table, combo_code](std::uint64_t k) {
    return rat_enum::value(table.at(seqcode::pair(combo_code, Nat(k))));
  });
}

}  // namespace sepkit
