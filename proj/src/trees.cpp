#include "sepkit/trees.hpp"

#include <map>

#include "sepkit/seqcode.hpp"

namespace sepkit {

std::vector<bool> TreeAutomaton::live_states() const {
  std::vector<bool> live(states(), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < states(); ++s) {
      if (!live[s]) continue;
      bool has_live_child = false;
      for (std::uint32_t a = 0; a < arity && !has_live_child; ++a) {
        std::int32_t t = next[s][a];
        if (t >= 0 && live[t]) has_live_child = true;
      }
      if (!has_live_child) {
        live[s] = false;
        changed = true;
      }
    }
  }
  return live;
}

std::int32_t TreeAutomaton::walk(const std::vector<Nat>& node) const {
  std::int32_t s = static_cast<std::int32_t>(initial);
  for (const auto& sym : node) {
    if (!fits_u64(sym) || to_u64(sym) >= arity) return -1;
    s = next[s][to_u64(sym)];
    if (s < 0) return -1;
  }
  return s;
}

bool TreeAutomaton::has_live_root() const { return live_states()[initial]; }

ExtDepth TreeAutomaton::ext_depth(const std::vector<Nat>& node) const {
  std::int32_t s = walk(node);
  ExtDepth e;
  if (s < 0) return e;
  e.member = true;
  std::vector<bool> live = live_states();
  if (live[s]) {
    e.infinite = true;
    return e;
  }
  // dead states form a DAG; longest chain by memoized descent
  std::map<std::int32_t, std::uint64_t> memo;
  std::function<std::uint64_t(std::int32_t)> longest = [&](std::int32_t st) {
    auto it = memo.find(st);
    if (it != memo.end()) return it->second;
    std::uint64_t best = 0;
    for (std::uint32_t a = 0; a < arity; ++a) {
      std::int32_t t = next[st][a];
      if (t >= 0) best = std::max(best, 1 + longest(t));
    }
    memo[st] = best;
    return best;
  };
  e.depth = node.size() + longest(s);
  return e;
}

bool TreeAutomaton::theta(std::uint64_t n, const std::vector<Nat>& s) const {
  if (n < s.size()) return false;
  ExtDepth e = ext_depth(s);
  return e.member && (e.infinite || e.depth >= n);
}

bool TreeAutomaton::phi(const std::vector<Nat>& s, std::uint64_t i) const {
  std::vector<Nat> with = s, without = s;
  with.push_back(Nat(i));
  without.push_back(Nat(1 - i));
  return ext_depth(with) > ext_depth(without);
}

Stream TreeAutomaton::leftmost_path() const {
  std::vector<bool> live = live_states();
  if (!live[initial]) throw Error("empty tree: no live state reachable from the root");
  TreeAutomaton self = *this;
  auto state = std::make_shared<std::int32_t>(static_cast<std::int32_t>(initial));
  return Stream::from_producer([self, state, live](std::vector<Nat>& cache) {
    for (std::uint32_t a = 0; a < self.arity; ++a) {
      std::int32_t t = self.next[*state][a];
      if (t >= 0 && live[t]) {
        *state = t;
        cache.push_back(Nat(a));
        return;
      }
    }
    throw Error("leftmost path walked into a dead state");
  });
}

Stream TreeAutomaton::char_stream() const {
  TreeAutomaton self = *this;
  return Stream::from_rule([self](const Nat& code) -> Nat {
    return self.member(seqcode::decode(code)) ? 1 : 0;
  });
}

TreeAutomaton TreeAutomaton::full(std::uint32_t arity) {
  TreeAutomaton a;
  a.arity = arity;
  a.next = {std::vector<std::int32_t>(arity, 0)};
  return a;
}

TreeAutomaton TreeAutomaton::force_one_at_even() {
  TreeAutomaton a;
  a.next = {{-1, 1}, {0, 0}};  // state = depth parity
  return a;
}

TreeAutomaton TreeAutomaton::no_consecutive_ones() {
  TreeAutomaton a;
  a.next = {{0, 1}, {0, -1}};  // state = last bit
  return a;
}

TreeAutomaton TreeAutomaton::first_bit_one() {
  TreeAutomaton a;
  a.next = {{-1, 1}, {1, 1}};
  return a;
}

TreeAutomaton TreeAutomaton::random_live(std::mt19937_64& rng, std::uint32_t arity) {
  for (;;) {
    TreeAutomaton a;
    a.arity = arity;
    std::size_t n = 3 + rng() % 5;
    a.next.resize(n);
    for (auto& row : a.next) {
      row.resize(arity);
      for (auto& t : row) {
        std::uint64_t roll = rng() % 10;
        t = roll < 3 ? -1 : static_cast<std::int32_t>(rng() % n);
      }
    }
    if (a.has_live_root()) return a;
  }
}

Stream BinaryTreeView::char_stream() const {
  auto self = *this;
  return Stream::from_rule([self](const Nat& code) -> Nat {
    FinSeq s = seqcode::decode(code);
    for (const auto& v : s)
      if (v > 1) return 0;
    return self.member(s) ? 1 : 0;
  });
}

BinaryTreeView BinaryTreeView::from_char_stream(Stream chi) {
  BinaryTreeView v;
  v.member = [chi](const std::vector<Nat>& node) {
    for (const auto& b : node)
      if (b > 1) return false;
    return chi.at(seqcode::encode(node)) == 1;
  };
  return v;
}

BinaryTreeView BinaryTreeView::from_automaton(TreeAutomaton a) {
  BinaryTreeView v;
  v.member = [a](const std::vector<Nat>& node) { return a.member(node); };
  return v;
}

Stream BoundedTreeView::char_stream() const {
  auto self = *this;
  return Stream::from_rule([self](const Nat& code) -> Nat {
    return self.member(seqcode::decode(code)) ? 1 : 0;
  });
}

BoundedTreeView BoundedTreeView::from_name(Stream name) {
  BoundedTreeView v;
  Stream chi = name.even_part();
  v.bound = name.odd_part();
  Stream b = v.bound;
  v.member = [chi, b](const std::vector<Nat>& node) {
    for (std::size_t i = 0; i < node.size(); ++i)
      if (node[i] >= b.at(std::uint64_t(i))) return false;
    return chi.at(seqcode::encode(node)) == 1;
  };
  return v;
}

BoundedTreeView BoundedTreeView::from_automaton(TreeAutomaton a, Stream bound) {
  BoundedTreeView v;
  v.bound = bound;
  v.member = [a, bound](const std::vector<Nat>& node) {
    for (std::size_t i = 0; i < node.size(); ++i)
      if (node[i] >= bound.at(std::uint64_t(i))) return false;
    return a.member(node);
  };
  return v;
}

bool theta_search(const BinaryTreeView& T, std::uint64_t n, const std::vector<Nat>& s,
                  std::uint64_t max_visits) {
  if (n < s.size()) return false;
  if (!T.member(s)) return false;
  std::uint64_t visits = 0;
  std::function<bool(std::vector<Nat>&)> dfs = [&](std::vector<Nat>& node) -> bool {
    if (node.size() == n) return true;
    if (++visits > max_visits)
      throw FuelExhausted("theta search exceeded its visit budget");
    for (std::uint64_t b = 0; b < 2; ++b) {
      node.push_back(Nat(b));
      bool ok = T.member(node) && dfs(node);
      node.pop_back();
      if (ok) return true;
    }
    return false;
  };
  std::vector<Nat> node = s;
  return dfs(node);
}

}  // namespace sepkit
