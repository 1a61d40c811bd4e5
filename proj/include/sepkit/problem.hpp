#pragma once

#include <any>
#include <functional>
#include <string>

#include "sepkit/machine.hpp"

namespace sepkit {

// Solution checking is tri-state: membership conditions here are typically
// Pi^0_1, so Accept at depth d means "no violation among the first d
// constraints"; deterministic checkers never flip Accept to Reject as the
// depth grows.
enum class Verdict { Accept, Reject, NeedMoreDepth };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Accept: return "accept";
    case Verdict::Reject: return "reject";
    default: return "need-more-depth";
  }
}

// A planted instance: a name together with the generator's ground truth
// (solution, bounds, automaton...), which is what makes the incomputable
// endpoints testable.
struct PlantedInstance {
  std::string problem_id;
  Stream name;
  std::any data;
};

// A multi-valued problem f, given by its solution checker and an optional
// domain checker over names.
struct Problem {
  std::string id;
  std::function<Verdict(const Stream& x, const Stream& y, std::uint64_t depth)> verify;
  std::function<Verdict(const Stream& x, std::uint64_t fuel)> domain_check;
};

// A realizer for a problem on a restricted instance class; stands in for the
// incomputable G of Lemma-style reductions.
struct OracleRealizer {
  std::string problem_id;
  std::string instance_class;
  std::function<Stream(const Stream& x)> realize;
};

// An executable witness of f <=_c g at the realizer level: H translates
// instances, K translates solutions, reading the interleaved pair x (+) w.
struct Reduction {
  std::string id;
  std::string source, target;
  Machine H;
  Machine K;
  // builds a target-problem oracle that is honest on the translated images of
  // this planted source instance (test harness hook)
  std::function<OracleRealizer(const PlantedInstance&)> planted_oracle;
};

// realizer for red.source out of a realizer for red.target:
// x |-> K(x (+) G(H(x)))
OracleRealizer apply_reduction(const Reduction& red, const OracleRealizer& G);

// Lemma-style transitivity: h' o h and (x,v) |-> k(x, k'(h(x), v)).
Reduction chain_reductions(const Reduction& r1, const Reduction& r2);

// when g(x) <= f(x) pointwise on dom(f): H = identity, K = second projection
Reduction superset_reduction(const Problem& f, const Problem& g);

// (g o f)(x) = union of g(y) over y in f(x); the composite checker
// reconstructs its witness y through f's realizer (the only computable
// option), and the composite domain rule spot-checks f(x) in dom(g).
Problem compose_problems(const Problem& f, const Problem& g,
                         const OracleRealizer& f_realizer);

// soundness of one reduction against one planted instance:
// K(x (+) G(H(x))) must verify for the source problem
Verdict check_reduction(const Reduction& red, const Problem& source,
                        const PlantedInstance& x, std::uint64_t depth);

}  // namespace sepkit
