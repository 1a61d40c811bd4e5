#pragma once

#include "sepkit/problems.hpp"

namespace sepkit {

// The explicit reductions between the canonical problems, each with a
// planted-oracle factory that is honest on the translated instance class.

Reduction range_le_c1();
Reduction c1_le_range();
Reduction sup_le_c1();
Reduction range_le_sup();
Reduction c1_le_sup();  // c1 <= range <= sup, chained
Reduction sep_le_c1();
Reduction sep_le_path2();
Reduction path2_le_sep();
Reduction pathB_le_path2();
Reduction path2_le_pathB();

// identity witness f <= f (H = id, K = second projection)
Reduction identity_reduction(const std::string& problem_id);

// approximation-from-above of a tree transformer: strings none of whose
// prefixes the machine has excluded within fuel |t| on input t^0^infinity
BinaryTreeView tilde_tree(const BinaryTreeView& T, const Machine& f);

// single-oracle-call composition: given f <= Path_2 and g <= Path_2 (the g
// reduction consuming f's solutions as instances), a reduction of the
// composite to Path_2 through the interleaved tree. The middle-path hook
// lets tests plant an oracle: given the source instance and a path of the
// first tree, produce a path of the second.
Reduction sep_compose(
    const Reduction& r_f, const Reduction& r_g,
    std::function<Stream(const PlantedInstance&, const Stream&)> middle_path = {});

// block coding used by pathB_le_path2: value v at level i becomes the
// length-b(i) block 0^v 1 0^(b(i)-1-v)
Stream encode_bounded_path(const Stream& path, const Stream& bound);
Stream decode_bounded_path(const Stream& bits, const Stream& bound);

// the tree h(p,q) whose infinite paths are exactly the separators
BinaryTreeView separation_tree(const Stream& p, const Stream& q);

// membership in the block-coded binary image of a bounded tree
bool bounded_block_image_member(const BoundedTreeView& T, const std::vector<Nat>& bits);

// the dovetailed enumeration {code(s)+2 : phi_T(s, bit)} with padding
Stream phi_enumeration_stream(const BinaryTreeView& T, std::uint64_t bit, Nat padding);

// theta/phi over a chi-presented binary tree (the honest name-side search)
bool phi_at(const BinaryTreeView& T, const std::vector<Nat>& s, std::uint64_t i,
            std::uint64_t n);

}  // namespace sepkit
