#include "sepkit/problem.hpp"

namespace sepkit {

OracleRealizer apply_reduction(const Reduction& red, const OracleRealizer& G) {
  if (G.problem_id != red.target)
    throw UsageError("oracle solves '" + G.problem_id + "' but reduction '" +
                     red.id + "' needs an oracle for '" + red.target + "'");
  OracleRealizer out;
  out.problem_id = red.source;
  out.instance_class = "via " + red.id + " over " + G.instance_class;
  Machine H = red.H, K = red.K;
  auto realize = G.realize;
  out.realize = [H, K, realize](const Stream& x) {
    Stream w = realize(H.apply(x));
    return K.apply(Stream::interleave(x, w));
  };
  return out;
}

Reduction chain_reductions(const Reduction& r1, const Reduction& r2) {
  if (r1.target != r2.source)
    throw UsageError("cannot chain " + r1.id + " with " + r2.id +
                     ": middle problems differ");
  Reduction out;
  out.id = r1.id + ";" + r2.id;
  out.source = r1.source;
  out.target = r2.target;
  Machine H1 = r1.H, K1 = r1.K, H2 = r2.H, K2 = r2.K;
  out.H = Machine(out.id + ".H", [H1, H2](Stream x) { return H2.apply(H1.apply(x)); });
  out.K = Machine(out.id + ".K", [H1, K1, K2](Stream xv) {
    Stream x = xv.even_part();
    Stream v = xv.odd_part();
    Stream mid = K2.apply(Stream::interleave(H1.apply(x), v));
    return K1.apply(Stream::interleave(x, mid));
  });
  return out;
}

Reduction superset_reduction(const Problem& f, const Problem& g) {
  Reduction out;
  out.id = f.id + "_le_" + g.id + "_superset";
  out.source = f.id;
  out.target = g.id;
  out.H = Machine(MachineDesc::echo());
  out.K = Machine(MachineDesc::odds());
  return out;
}

Problem compose_problems(const Problem& f, const Problem& g,
                         const OracleRealizer& f_realizer) {
  if (f_realizer.problem_id != f.id)
    throw UsageError("witness realizer solves '" + f_realizer.problem_id +
                     "', not '" + f.id + "'");
  Problem out;
  out.id = g.id + "." + f.id;
  auto fv = f.verify, gv = g.verify;
  auto fd = f.domain_check, gd = g.domain_check;
  auto wit = f_realizer.realize;
  out.verify = [fv, gv, wit](const Stream& x, const Stream& z,
                             std::uint64_t depth) -> Verdict {
    Stream y = wit(x);
    Verdict a = fv(x, y, depth);
    Verdict b = gv(y, z, depth);
    if (a == Verdict::Reject || b == Verdict::Reject) return Verdict::Reject;
    if (a == Verdict::Accept && b == Verdict::Accept) return Verdict::Accept;
    return Verdict::NeedMoreDepth;
  };
  out.domain_check = [fd, gd, wit](const Stream& x, std::uint64_t fuel) -> Verdict {
    Verdict a = fd ? fd(x, fuel) : Verdict::Accept;
    if (a == Verdict::Reject) return Verdict::Reject;
    // x in dom(g o f) also needs f(x) inside dom(g); spot-check the witness
    Verdict b = gd ? gd(wit(x), fuel) : Verdict::Accept;
    if (b == Verdict::Reject) return Verdict::Reject;
    if (a == Verdict::Accept && b == Verdict::Accept) return Verdict::Accept;
    return Verdict::NeedMoreDepth;
  };
  return out;
}

Verdict check_reduction(const Reduction& red, const Problem& source,
                        const PlantedInstance& x, std::uint64_t depth) {
  if (!red.planted_oracle)
    throw UsageError("reduction '" + red.id + "' has no planted-oracle factory");
  OracleRealizer G = red.planted_oracle(x);
  OracleRealizer solver = apply_reduction(red, G);
  return source.verify(x.name, solver.realize(x.name), depth);
}

}  // namespace sepkit
