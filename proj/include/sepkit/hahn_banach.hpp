#pragma once

#include "sepkit/banach.hpp"
#include "sepkit/problems.hpp"

namespace sepkit {

// basis metadata produced by the effective independence construction:
// q(0) = N is the repeated index, R = {j > 0 : q(j) = q(0)}, and
// {e(q(j)) : j not in R} is independent with dense span
struct BasisStream {
  Stream q;
  Nat repeated_index() const { return q.at(std::uint64_t(0)); }
  bool in_R_star(std::uint64_t j) const {
    return q.at(j) == q.at(std::uint64_t(0));
  }
  // e'(k) = e(q(k)) as a combo over the original generators
  FinSeq eprime_combo(const FinSeq& s) const;
};

// outcome of the Pour-El/Richards style test
struct PrOutcome {
  bool independent = false;
  std::uint64_t m = 0;              // branch (a) witness exponent
  std::vector<Rational> gammas;     // branch (b) approximation coefficients
};

// Dovetails the shell minimum certificate (branch a) against the rational
// approximation search (branch b); every answer is certified through the
// norm itself. Throws FuelExhausted only if both searches stall, which the
// independence dichotomy rules out on well-formed spaces.
PrOutcome pr_test(const BanachSpace& X, const std::vector<FinSeq>& vectors,
                  const FinSeq& candidate, std::uint64_t slack_exponent,
                  std::uint64_t fuel = 1u << 22);

// whether no shell point with denominators 2^m violates the minimum bound
// (exposed for tests; pr_test drives m upward over this)
bool shell_minimum_exceeds(const BanachSpace& X, const std::vector<FinSeq>& ws,
                           std::uint64_t m, std::uint64_t node_budget,
                           bool* budget_hit = nullptr);

BasisStream ueil(const BanachSpace& X);

// a Cauchy name of e(i) through rational combinations of e'; the staged
// search of the identity lemma
Stream basis_change(const BanachSpace& X, const BasisStream& b, std::uint64_t i);

// decides a_{e'}(s) = a_{e'}(t)
bool identity_char(const BasisStream& b, const FinSeq& s, const FinSeq& t);

// the combo code k with alpha a_{e'}(i) + beta a_{e'}(j) = a_{e'}(k)
Nat eprime_combination_code(const Rational& alpha, const Nat& i,
                            const Rational& beta, const Nat& j);

// product box prod_n [-radius(n), radius(n)]: a kappa name with closed-form
// grid covers plus the clamped rational grid dense in it
std::pair<CompactName, ClosedPlus> compact_box(
    std::function<Rational(std::uint64_t)> radius);

// finite corner-point certificate that candidate balls cover the box
bool box_cover_certified(const std::vector<Rational>& radii,
                         const std::vector<Ball>& balls);

// phi(g, q) = (g(a_{e'}(n)))_n
ProductPoint phi_embed(const PFName& g, const BasisStream& b);

struct CandidateSets {
  CompactName box;                                  // \hat{X}+
  ClosedMinus linear;                               // \tilde{X}+
  std::function<Rational(std::uint64_t)> radius;    // ||a_{e'}(n)||
};
CandidateSets candidate_sets(const BanachSpace& X, const BasisStream& b);

// extensions of f inside the linear candidate set (Lemma-H constraints)
ClosedMinus h_extensions(const PFName& f, const BasisStream& b,
                         const CandidateSets& cs);

// recover the functional with phi(g) = a; r is an upper bound <= 1
PFName chi_recover(const ProductPoint& a, const BanachSpace& X,
                   const BasisStream& b, const CReal& r);

// ---- the reversal pieces ----

// +-2^-k at the first enumeration witness, 0 when none ever appears
CReal delta_n(const Stream& p, const Stream& q, std::uint64_t n);
// exact value for planted instances (ranges within the planted bound)
Rational delta_n_planted(const SepPlant& plant, std::uint64_t n);

Rational coord_norm_exact(const Rational& alpha, const Rational& beta,
                          const Rational& delta);
CReal coord_norm(const Rational& alpha, const Rational& beta, std::uint64_t n,
                 const Stream& p, const Stream& q);

PseudoNorm sep_block_norm(const Stream& p, const Stream& q);
PseudoNorm sep_block_norm_planted(const SepPlant& plant);

// the n-th block points: z_n = <(0,0)...(0,1)>, w-part generators
FinSeq z_combo(std::uint64_t n);

PFName build_hb_instance(const Stream& p, const Stream& q);
PFName build_hb_instance_planted(const SepPlant& plant);

// read the separator off approximations of g(z_n)
Stream decode_separator(const Stream& p, const Stream& q, const Stream& g_table,
                        const Stream& f_table);

// the analytic extension g_eps for a planted separation instance
OracleRealizer analytic_hb_oracle(const PlantedInstance& sep_inst);

Reduction sep_le_hb();
Reduction hb_le_sep();
Problem hb_problem();

// planted two-generator extension problems for the registry
struct HbPlant {
  Rational extension_weight;  // the planted extension is g* = (u, 1-u)
  bool subspace_is_whole = false;
};
PlantedInstance gen_hb(std::uint64_t seed);
PlantedInstance make_hb_instance(const HbPlant& plant);

// multi-part name packing: part i at positions <i, j>
Stream pack_parts(std::vector<Stream> parts);
Stream part_of(const Stream& packed, std::uint64_t i);

// The staged main-theorem pipeline around one instance: basis, candidate
// sets, extension set and the selection tree, all deterministic in f.
struct HbPipeline {
  BasisStream basis;
  CandidateSets sets;
  ClosedMinus extensions;
  SelTree tree;
};
HbPipeline hb_pipeline(const PFName& f);

// recover the extension from a Path_B path of the pipeline's tree
PFName hb_recover_from_path(const HbPipeline& pipe, const BanachSpace& X,
                            const Stream& path);

// the Path_B oracle that follows a point with known exact coordinates
// through the box grids (the planted side of the selection step)
Stream box_target_path(std::function<Rational(std::uint64_t)> radius,
                       std::function<Rational(std::uint64_t)> target);

// exact coordinates of phi(g*) for the planted two-generator extensions
std::function<Rational(std::uint64_t)> hb_planted_target(const PlantedInstance& inst,
                                                         const BasisStream& b);

}  // namespace sepkit
