#pragma once

#include "sepkit/hyperspace.hpp"

namespace sepkit {

struct RatInterval {
  Rational lo, hi;
};

RatInterval abs_interval(const RatInterval& x);

// A pseudo-norm on formal rational combinations c_s = sum a_Q(s(i)) * i.
// Every concrete space here evaluates exactly; eval_interval bounds the norm
// over a box of generator coefficients (used by the independence test), and
// effective_coords is a linear map onto coordinates where the pseudo-norm is
// a genuine norm (used to propose dependency witnesses).
struct PseudoNorm {
  std::string id;
  std::function<CReal(const FinSeq&)> eval;
  std::function<std::optional<Rational>(const FinSeq&)> eval_exact;
  std::function<RatInterval(const std::vector<RatInterval>&)> eval_interval;
  std::function<std::vector<Rational>(const std::vector<Rational>&)> effective_coords;
};

// generator-coefficient view of a combo (coeff i = a_Q(s(i)))
std::vector<Rational> combo_coeffs(const FinSeq& s);
FinSeq coeffs_to_combo(std::vector<Rational> coeffs);
FinSeq combo_add(const FinSeq& s, const FinSeq& t);
FinSeq combo_sub(const FinSeq& s, const FinSeq& t);
FinSeq combo_scale(const Rational& a, const FinSeq& s);

// A noted pseudo-normed space together with its constructive completion.
// The delta_B name is derived lazily from the pseudo-norm: it enumerates the
// certified facts a_Q(i) < d(a_e(s), a_e(t)) < a_Q(j).
class BanachSpace {
 public:
  BanachSpace() = default;  // must be assigned a pseudo-norm before use
  explicit BanachSpace(PseudoNorm pn);
  BanachSpace(PseudoNorm pn, Stream given_facts);  // raw-stream round-trips

  const PseudoNorm& pseudo_norm() const { return pn_; }
  CReal combo_norm(const FinSeq& s) const;
  std::optional<Rational> combo_norm_exact(const FinSeq& s) const;
  CReal combo_dist(const FinSeq& s, const FinSeq& t) const;
  FinSeq e_combo(std::uint64_t n) const;  // the fundamental point e(n)
  Stream fact_stream() const;

 private:
  PseudoNorm pn_;
  std::optional<Stream> facts_;
};

// A point of the completion: an effectively Cauchy sequence of combos,
// d(c_{s_i}, c_{s_j}) < 2^-i for i < j.
class CPoint {
 public:
  static CPoint from_combo(FinSeq combo);
  static CPoint from_reps(std::function<FinSeq(std::uint64_t)> rep);
  FinSeq rep(std::uint64_t i) const;
  std::optional<FinSeq> exact_combo() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

CPoint a_e(const BanachSpace& X, const FinSeq& s);
CPoint point_add(const BanachSpace& X, const CPoint& x, const CPoint& y);
CPoint point_scale(const BanachSpace& X, const CReal& a, const CPoint& x);
CReal point_norm(const BanachSpace& X, const CPoint& x);
CReal point_dist(const BanachSpace& X, const CPoint& x, const CPoint& y);

// ---- built-in pseudo-norms for tests and pipelines ----

// generators 0 and 1 carry max(|c0|, |c1|); everything else is pseudo-null
PseudoNorm max_two_generator_norm();
// like the max norm but generator 2 collapses onto e(0)+e(1)
PseudoNorm collapsed_third_generator_norm();
PseudoNorm findim_max_norm(std::size_t dim);
PseudoNorm findim_weighted_l1_norm(std::vector<Rational> weights);
std::optional<PseudoNorm> builtin_pseudo_norm(const std::string& id);

// ---- partial bounded linear functionals ----

struct PFName {
  BanachSpace space;
  ClosedPlus subspace;  // indices are combo codes of a sequence dense in A
  std::function<CReal(const CPoint&)> func;
  CReal norm_r;
};

// the evaluation table w(<m,k>) = index of a rational within 2^-k of f(c_m);
// a faithful, dense record of the functional used as its answer name
Stream functional_table(const PFName& f);
CReal table_value(const Stream& table, const Nat& combo_code);

}  // namespace sepkit
