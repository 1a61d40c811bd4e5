#pragma once

#include <optional>
#include <random>
#include <vector>

#include "sepkit/stream.hpp"

namespace sepkit {

// Extension reach of a node: the largest n such that some depth-n member of
// the tree extends it. Nothing for non-members, unbounded along live states.
struct ExtDepth {
  bool member = false;
  bool infinite = false;
  std::uint64_t depth = 0;  // meaningful when member && !infinite

  friend bool operator>(const ExtDepth& a, const ExtDepth& b) {
    if (!a.member) return false;
    if (!b.member) return true;
    if (a.infinite) return !b.infinite;
    if (b.infinite) return false;
    return a.depth > b.depth;
  }
};

// A deterministic prefix automaton presenting a tree over alphabet
// {0..arity-1}: a string is in the tree iff its symbol walk never falls out.
// The decidable subclass on which Path_2 / Path_B have honest oracles.
struct TreeAutomaton {
  std::uint32_t arity = 2;
  std::uint32_t initial = 0;
  std::vector<std::vector<std::int32_t>> next;  // next[state][symbol], -1 = out

  std::size_t states() const { return next.size(); }

  // states with at least one infinite path; greatest fixpoint
  std::vector<bool> live_states() const;
  std::int32_t walk(const std::vector<Nat>& node) const;
  bool member(const std::vector<Nat>& node) const { return walk(node) >= 0; }
  bool has_live_root() const;

  ExtDepth ext_depth(const std::vector<Nat>& node) const;
  // theta(n, s): some depth-n member extends s
  bool theta(std::uint64_t n, const std::vector<Nat>& s) const;
  // phi(s, i): for some n, s*i extends to depth n but s*(1-i) does not
  bool phi(const std::vector<Nat>& s, std::uint64_t i) const;

  // leftmost infinite path: least live child at every node.
  // Throws Error when no live state is reachable from the root.
  Stream leftmost_path() const;

  // characteristic stream over SeqCode indices (1 iff the decoded string is
  // alphabet-valid and a member)
  Stream char_stream() const;

  static TreeAutomaton full(std::uint32_t arity = 2);
  static TreeAutomaton force_one_at_even();   // t(i) = 1 at even i
  static TreeAutomaton no_consecutive_ones();
  static TreeAutomaton first_bit_one();
  static TreeAutomaton random_live(std::mt19937_64& rng, std::uint32_t arity = 2);
};

// Views used by reductions that only need membership queries. The chi-stream
// adapters keep the faithful name interface on top.
struct BinaryTreeView {
  std::function<bool(const std::vector<Nat>&)> member;

  Stream char_stream() const;
  static BinaryTreeView from_char_stream(Stream chi);
  static BinaryTreeView from_automaton(TreeAutomaton a);
};

struct BoundedTreeView {
  Stream bound;
  std::function<bool(const std::vector<Nat>&)> member;

  Stream char_stream() const;
  // instance name: chi (+) bound
  Stream name() const { return Stream::interleave(char_stream(), bound); }
  static BoundedTreeView from_name(Stream name);
  static BoundedTreeView from_automaton(TreeAutomaton a, Stream bound);
};

// theta for an arbitrary binary tree given by membership queries: bounded
// DFS for a depth-n extension of s; visits capped, loud on exhaustion.
bool theta_search(const BinaryTreeView& T, std::uint64_t n, const std::vector<Nat>& s,
                  std::uint64_t max_visits = 1u << 20);

}  // namespace sepkit
