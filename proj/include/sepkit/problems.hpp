#pragma once

#include <set>

#include "sepkit/creal.hpp"
#include "sepkit/problem.hpp"
#include "sepkit/trees.hpp"

namespace sepkit {

// ---- instance packing ----------------------------------------------------

// a sequence of reals packed into one name: s(<n,i>) = (name of x_n)(i)
Stream pack_real_seq(std::function<CReal(std::uint64_t)> xs);
CReal unpack_real(const Stream& s, std::uint64_t n);

// ---- problems ------------------------------------------------------------

Problem sep_problem();
Problem path2_problem();
Problem pathB_problem();
Problem range_problem();
Problem sup_problem();
Problem c1_problem();
Problem omega_problem();

// r separates ran(p) and ran(q) through depth: r(p(n)) = 0 and r(q(n)) = 1
Verdict verify_separator(const Stream& pq, const Stream& r, std::uint64_t depth);

// Def-ck evaluation with every quantifier ranging over [0, witness_bound)
int ck_value(const Stream& p, std::uint64_t n, std::uint64_t k,
             std::uint64_t witness_bound);

// leftmost infinite path of an automaton-presented tree
Stream regular_path_oracle(const TreeAutomaton& t);

// ---- Heine-Borel subcover search ------------------------------------------

// interval (a_Q(i), a_Q(j)) coded as <i,j>
Nat interval_code(const Rational& lo, const Rational& hi);
std::pair<Rational, Rational> decode_interval(const Nat& code);

// indices of finitely many listed intervals whose union contains [0,1];
// fuel bounds the prefix of the enumeration that is searched
FinSeq finite_subcover(const Stream& cover, std::uint64_t fuel = 10000);

// exact endpoint-chain check that open intervals cover the closed unit interval
bool covers_unit_interval(std::vector<std::pair<Rational, Rational>> intervals);

// ---- planted instances -----------------------------------------------------

struct SepPlant {
  Stream p, q;
  Stream solution;
  std::uint64_t value_bound = 64;
  // serializable recipe
  std::vector<Nat> p_period, q_period, sol_head;
};

struct Path2Plant {
  TreeAutomaton aut;
};

struct PathBPlant {
  BoundedTreeView tree;
  Stream path;  // one known infinite path
  // serializable recipe: a unique periodic path with dead bushes, or an
  // automaton under a constant bound
  bool from_automaton = false;
  std::vector<Nat> bound_period, path_period;
  TreeAutomaton aut;
};

// rebuild the bounded-tree view from a PathBPlant recipe
PathBPlant materialize_pathB_plant(PathBPlant plant);

struct RangePlant {
  std::set<std::uint64_t> head_values;  // values below 50
  std::vector<Nat> head_order;          // the order they are enumerated in
  std::uint64_t tail_base;              // then tail_base, tail_base+1, ...
  std::uint64_t head_len;
  bool in_range(const Nat& n) const;
  Rational exact_sup_of_geometric() const;  // sup_m sum_{k<=m} 2^-(p(k)+1)
};

struct C1Plant {
  Stream target;  // C_1(p) equals this stream
  std::uint64_t witness_bound = 1;
  std::vector<Nat> target_head, target_period;
};

// the planted c1 instance stream for a target: p(<n,0>) = 1 iff target(n) = 0
Stream c1_instance_stream(const Stream& target);

struct SupPlant {
  Rational sup;
  bool geometric = false;            // x_n = 1 - 2^-n family
  std::vector<Rational> values;      // finite-support family
};

Stream sup_instance_stream(const SupPlant& plant);

struct CoverPlant {
  std::vector<std::pair<Rational, Rational>> intervals;  // the enumeration head
};

// geometric selection instances: A = [lo, hi] inside the unit interval,
// with a planted rational target in A and a shuffle seed for the complement
// enumeration
struct SelPlant {
  Rational lo, hi, target;
  std::uint64_t shuffle = 0;
};

Problem sel_problem();
Stream sel_instance_name(const SelPlant& plant);
PlantedInstance gen_sel(std::uint64_t seed);
OracleRealizer sel_planted_oracle(const PlantedInstance& inst);

PlantedInstance gen_sep(std::uint64_t seed, std::uint64_t value_bound = 64);
PlantedInstance gen_path2(std::uint64_t seed);
PlantedInstance gen_pathB(std::uint64_t seed);
PlantedInstance gen_range(std::uint64_t seed);
PlantedInstance gen_sup(std::uint64_t seed);
PlantedInstance gen_c1(std::uint64_t seed);
PlantedInstance gen_cover(std::uint64_t seed);

// planted oracles for the incomputable endpoints
OracleRealizer sep_planted_oracle(const PlantedInstance& inst);
OracleRealizer path2_planted_oracle(const PlantedInstance& inst);
OracleRealizer pathB_planted_oracle(const PlantedInstance& inst);
CReal sup_oracle(const Stream& xs_name, const SupPlant& plant);

}  // namespace sepkit
