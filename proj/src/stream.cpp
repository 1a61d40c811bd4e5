#include "sepkit/stream.hpp"

#include <map>
#include <mutex>

namespace sepkit {

struct Stream::Impl {
  std::recursive_mutex mu;

  // exactly one of rule / step is set
  std::function<Nat(const Nat&)> rule;
  std::function<void(std::vector<Nat>&)> step;

  std::vector<Nat> cache;           // produced prefix (producer mode)
  std::map<Nat, Nat> memo;          // bounded memo (rule mode)
  std::uint64_t budget = Stream::kDefaultBudget;

  static constexpr std::size_t kMemoCap = 1u << 16;
};

Nat Stream::at(const Nat& i) const {
  if (!impl_) throw Error("demand on an empty stream");
  if (i < 0) throw Error("negative stream index");
  Impl& s = *impl_;
  if (s.rule) {
    {
      std::lock_guard<std::recursive_mutex> lk(s.mu);
      auto it = s.memo.find(i);
      if (it != s.memo.end()) return it->second;
    }
    Nat v = s.rule(i);
    std::lock_guard<std::recursive_mutex> lk(s.mu);
    if (s.memo.size() < Impl::kMemoCap) s.memo.emplace(i, v);
    return v;
  }
  if (!fits_u64(i) || to_u64(i) >= kMaterializeCap)
    throw FuelExhausted("stream index too large to materialize: " + i.str());
  std::uint64_t idx = to_u64(i);
  std::lock_guard<std::recursive_mutex> lk(s.mu);
  std::uint64_t calls = 0;
  while (s.cache.size() <= idx) {
    if (calls++ >= s.budget)
      throw FuelExhausted("stream demand at index " + std::to_string(idx) +
                          " exhausted its step budget");
    std::size_t before = s.cache.size();
    s.step(s.cache);
    if (s.cache.size() == before) continue;  // no progress this step
  }
  return s.cache[idx];
}

FinSeq Stream::prefix(std::uint64_t n) const {
  FinSeq out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(at(i));
  return out;
}

bool Stream::has_rule() const { return impl_ && static_cast<bool>(impl_->rule); }

std::uint64_t Stream::produced() const {
  if (!impl_) return 0;
  std::lock_guard<std::recursive_mutex> lk(impl_->mu);
  return impl_->cache.size();
}

Stream Stream::from_rule(std::function<Nat(const Nat&)> rule) {
  auto impl = std::make_shared<Impl>();
  impl->rule = std::move(rule);
  return Stream(std::move(impl));
}

Stream Stream::from_producer(std::function<void(std::vector<Nat>&)> step,
                             std::uint64_t budget) {
  auto impl = std::make_shared<Impl>();
  impl->step = std::move(step);
  impl->budget = budget;
  return Stream(std::move(impl));
}

Stream Stream::constant(Nat v) {
  return from_rule([v](const Nat&) { return v; });
}

Stream Stream::periodic(std::vector<Nat> head, std::vector<Nat> period) {
  if (period.empty()) throw UsageError("periodic stream needs a nonempty period");
  auto h = std::make_shared<std::vector<Nat>>(std::move(head));
  auto p = std::make_shared<std::vector<Nat>>(std::move(period));
  return from_rule([h, p](const Nat& i) -> Nat {
    if (i < Nat(h->size())) return (*h)[to_u64(i)];
    Nat off = i - Nat(h->size());
    return (*p)[to_u64(off % Nat(p->size()))];
  });
}

Stream Stream::affine_tail(std::vector<Nat> head, Nat base, Nat step) {
  auto h = std::make_shared<std::vector<Nat>>(std::move(head));
  return from_rule([h, base, step](const Nat& i) -> Nat {
    if (i < Nat(h->size())) return (*h)[to_u64(i)];
    return base + (i - Nat(h->size())) * step;
  });
}

Stream Stream::prepend(std::vector<Nat> head, Stream tail) {
  auto h = std::make_shared<std::vector<Nat>>(std::move(head));
  return from_rule([h, tail](const Nat& i) -> Nat {
    if (i < Nat(h->size())) return (*h)[to_u64(i)];
    return tail.at(i - Nat(h->size()));
  });
}

Stream Stream::interleave(Stream p, Stream q) {
  return from_rule([p, q](const Nat& i) -> Nat {
    Nat half = i / 2;
    return (i % 2 == 0) ? p.at(half) : q.at(half);
  });
}

Stream Stream::even_part() const {
  Stream self = *this;
  return from_rule([self](const Nat& i) { return self.at(i * 2); });
}

Stream Stream::odd_part() const {
  Stream self = *this;
  return from_rule([self](const Nat& i) { return self.at(i * 2 + 1); });
}

Stream Stream::drop(std::uint64_t k) const {
  Stream self = *this;
  return from_rule([self, k](const Nat& i) { return self.at(i + Nat(k)); });
}

}  // namespace sepkit
