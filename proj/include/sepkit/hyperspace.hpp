#pragma once

#include "sepkit/spaces.hpp"
#include "sepkit/trees.hpp"

namespace sepkit {

// psi_+: a closed set presented by a sequence dense in it
struct ClosedPlus {
  std::function<Nat(std::uint64_t)> dense_index;
};

// psi_-: a closed set presented by rational balls exhausting its complement;
// nullopt entries are padding (nothing listed yet at that position)
struct ClosedMinus {
  std::function<std::optional<Ball>(std::uint64_t)> ball;

  static ClosedMinus whole_space();
  static ClosedMinus interleave2(const ClosedMinus& a, const ClosedMinus& b);
};

// one finite 2^-level cover, possibly huge, addressed by index
struct CoverSpec {
  Nat count;
  Rational radius;
  std::function<Nat(const Nat&)> center;
};

// kappa / kappa_-: compact set presented by an enumeration of finite covers.
// level_cover is the per-level 2^-n extraction the selection proof assumes is
// uniformly available; concrete names provide it in closed form, and
// extract_level_cover can also recover it by scanning the enumeration.
struct CompactName {
  bool meets = false;  // kappa (covers meet the set) vs kappa_-
  Stream cover_codes;
  std::function<CoverSpec(std::uint64_t level)> level_cover;
};

// ball-list coding used by cover enumerations: a cover is the code of the
// list of ball codes, a ball the pair <center, radius index>
Nat ball_code(const Ball& b);
Ball decode_ball(const Nat& code);
Nat cover_code(const std::vector<Ball>& balls);
std::vector<Ball> decode_cover(const Nat& code);

// scan a kappa-name for the first listed cover whose radii are all <= 2^-level
CoverSpec extract_level_cover(const Stream& cover_codes, std::uint64_t level,
                              std::uint64_t fuel = 4096);

// ready-made compact names with closed-form level covers
CompactName unit_interval_compact();  // [0,1] in the real line
CompactName cantor_compact();         // all of Cantor space

// The selection tree of Theorem-sel: nodes pick one center per level, kept
// mutually close and clear of every listed complement ball seen so far.
class SelTree {
 public:
  SelTree(MetricSpace X, CompactName K, ClosedMinus A);

  Nat bound(std::uint64_t level) const;
  Nat center_index(std::uint64_t level, const Nat& j) const;
  bool member(const std::vector<Nat>& node) const;
  BoundedTreeView view() const;

 private:
  const CoverSpec& cover(std::uint64_t level) const;
  struct State;
  std::shared_ptr<State> st_;
};

// the limit point along a Path_B path of the tree, as a Cauchy index stream
Stream sel_point(const SelTree& tree, const Stream& path);

// A_T in Cantor space: complement balls are the extension cones of the
// strings outside the tree
ClosedMinus cantor_complement_tree(const BinaryTreeView& T);

// closed [lo, hi] inside the real line, complement listed as rational balls
ClosedMinus real_segment_complement(const Rational& lo, const Rational& hi,
                                    std::uint64_t shuffle_seed = 0);

}  // namespace sepkit
