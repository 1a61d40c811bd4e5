#include "sepkit/registry.hpp"

#include "sepkit/hahn_banach.hpp"
#include "sepkit/seqcode.hpp"

namespace sepkit {

Problem repath_problem() {
  Problem f;
  f.id = "repath";
  f.verify = [](const Stream& x, const Stream& y, std::uint64_t depth) {
    for (std::uint64_t n = 0; n < depth; ++n) {
      if (y.at(n) > 1) return Verdict::Reject;
      if (y.at(n) != x.at(n)) return Verdict::Reject;
    }
    return Verdict::Accept;
  };
  return f;
}

Reduction repath_le_path2() {
  Reduction r;
  r.id = "repath_le_path2";
  r.source = "repath";
  r.target = "path2";
  r.H = Machine("repath_le_path2.H", [](Stream x) {
    BinaryTreeView prefix_tree;
    prefix_tree.member = [x](const std::vector<Nat>& t) {
      for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] > 1 || t[i] != x.at(std::uint64_t(i))) return false;
      return true;
    };
    return prefix_tree.char_stream();
  });
  r.K = Machine(MachineDesc::odds());
  return r;
}

namespace {

Reduction composition_demo() {
  // Path_2 composed with the point-reproduction wrapper: one oracle call
  // through the interleaved tree, solutions are still paths of the source
  Reduction composed = sep_compose(
      identity_reduction("path2"), repath_le_path2(),
      [](const PlantedInstance&, const Stream& p0) { return p0; });
  composed.id = "sep_compose";
  composed.source = "path2";
  composed.planted_oracle = [](const PlantedInstance& inst) {
    const auto& plant = std::any_cast<const Path2Plant&>(inst.data);
    OracleRealizer g;
    g.problem_id = "path2";
    g.instance_class = "interleaved composition trees of automaton instances";
    TreeAutomaton aut = plant.aut;
    g.realize = [aut](const Stream&) {
      Stream p = aut.leftmost_path();
      return Stream::interleave(p, p);
    };
    return g;
  };
  return composed;
}

Registry build() {
  Registry r;
  for (const auto& p :
       {sep_problem(), path2_problem(), pathB_problem(), range_problem(),
        sup_problem(), c1_problem(), omega_problem(), hb_problem(), repath_problem()})
    r.problems.emplace(p.id, p);

  for (const auto& red :
       {range_le_c1(), c1_le_range(), sup_le_c1(), range_le_sup(), c1_le_sup(),
        sep_le_c1(), sep_le_path2(), path2_le_sep(), pathB_le_path2(),
        path2_le_pathB(), composition_demo(), sep_le_hb(), hb_le_sep()})
    r.reductions.emplace(red.id, red);

  r.generators.emplace("sep", [](std::uint64_t s) { return gen_sep(s); });
  r.generators.emplace("path2", [](std::uint64_t s) { return gen_path2(s); });
  r.generators.emplace("pathB", [](std::uint64_t s) { return gen_pathB(s); });
  r.generators.emplace("range", [](std::uint64_t s) { return gen_range(s); });
  r.generators.emplace("sup", [](std::uint64_t s) { return gen_sup(s); });
  r.generators.emplace("c1", [](std::uint64_t s) { return gen_c1(s); });
  r.generators.emplace("cover", [](std::uint64_t s) { return gen_cover(s); });
  r.generators.emplace("hb", [](std::uint64_t s) { return gen_hb(s); });
  return r;
}

}  // namespace

const Registry& registry() {
  static Registry r = build();
  return r;
}

}  // namespace sepkit
