#include "sepkit/machine.hpp"

#include <memory>

namespace sepkit {

namespace {

using Kind = MachineDesc::Kind;

struct Runner {
  const MachineDesc* d;
  std::uint64_t steps = 0;
  Nat saved;
  bool have_saved = false;
  std::vector<std::unique_ptr<Runner>> kids;

  explicit Runner(const MachineDesc& desc) : d(&desc) {
    for (const auto& c : desc.children) kids.push_back(std::make_unique<Runner>(c));
  }

  void step(const Nat& x, std::vector<Nat>& out) {
    switch (d->kind) {
      case Kind::Echo:
        out.push_back(x);
        break;
      case Kind::Affine:
        out.push_back(d->a * x + d->b);
        break;
      case Kind::PairwiseAdd:
      case Kind::PairwiseMax:
        if (!have_saved) {
          saved = x;
          have_saved = true;
        } else {
          out.push_back(d->kind == Kind::PairwiseAdd ? saved + x
                                                     : (saved < x ? x : saved));
          have_saved = false;
        }
        break;
      case Kind::Evens:
        if (steps % 2 == 0) out.push_back(x);
        break;
      case Kind::Odds:
        if (steps % 2 == 1) out.push_back(x);
        break;
      case Kind::Stutter:
        for (Nat i = 0; i < d->a; ++i) out.push_back(x);
        break;
      case Kind::Drop:
        if (Nat(steps) >= d->a) out.push_back(x);
        break;
      case Kind::Prepend:
        if (steps == 0) out.insert(out.end(), d->literal.begin(), d->literal.end());
        out.push_back(x);
        break;
      case Kind::Compose: {
        std::vector<Nat> mid;
        kids[0]->step(x, mid);
        for (const auto& y : mid) kids[1]->step(y, out);
        break;
      }
      case Kind::Curried:
        if (steps == 0) out.push_back(d->children[0].code());
        out.push_back(x);
        break;
    }
    ++steps;
  }
};

constexpr std::uint64_t kTagEcho = 0, kTagAffine = 1, kTagPairAdd = 2,
                        kTagPairMax = 3, kTagEvens = 4, kTagOdds = 5,
                        kTagStutter = 6, kTagDrop = 7, kTagPrepend = 8,
                        kTagCompose = 9, kTagCurried = 10;

void serialize_into(const MachineDesc& d, FinSeq& out) {
  switch (d.kind) {
    case Kind::Echo:
      out.push_back(kTagEcho);
      break;
    case Kind::Affine:
      out.push_back(kTagAffine);
      out.push_back(d.a);
      out.push_back(d.b);
      break;
    case Kind::PairwiseAdd:
      out.push_back(kTagPairAdd);
      break;
    case Kind::PairwiseMax:
      out.push_back(kTagPairMax);
      break;
    case Kind::Evens:
      out.push_back(kTagEvens);
      break;
    case Kind::Odds:
      out.push_back(kTagOdds);
      break;
    case Kind::Stutter:
      out.push_back(kTagStutter);
      out.push_back(d.a);
      break;
    case Kind::Drop:
      out.push_back(kTagDrop);
      out.push_back(d.a);
      break;
    case Kind::Prepend:
      out.push_back(kTagPrepend);
      out.push_back(d.literal.size());
      for (const auto& v : d.literal) out.push_back(v);
      break;
    case Kind::Compose:
      out.push_back(kTagCompose);
      serialize_into(d.children[0], out);
      serialize_into(d.children[1], out);
      break;
    case Kind::Curried:
      out.push_back(kTagCurried);
      serialize_into(d.children[0], out);
      break;
  }
}

// cursor parse; anything out of shape falls back to Echo
MachineDesc parse(const FinSeq& s, std::size_t& pos, int depth) {
  MachineDesc d;
  if (pos >= s.size() || depth > 32) return d;
  Nat tag = s[pos++];
  if (!fits_u64(tag)) return d;
  switch (to_u64(tag)) {
    case kTagEcho:
      break;
    case kTagAffine:
      d.kind = Kind::Affine;
      d.a = pos < s.size() ? s[pos++] : Nat(1);
      d.b = pos < s.size() ? s[pos++] : Nat(0);
      break;
    case kTagPairAdd:
      d.kind = Kind::PairwiseAdd;
      break;
    case kTagPairMax:
      d.kind = Kind::PairwiseMax;
      break;
    case kTagEvens:
      d.kind = Kind::Evens;
      break;
    case kTagOdds:
      d.kind = Kind::Odds;
      break;
    case kTagStutter:
      d.kind = Kind::Stutter;
      d.a = pos < s.size() ? s[pos++] : Nat(1);
      if (d.a > 8) d.a = 8;  // keep per-step emission finite and small
      break;
    case kTagDrop:
      d.kind = Kind::Drop;
      d.a = pos < s.size() ? s[pos++] : Nat(0);
      break;
    case kTagPrepend: {
      d.kind = Kind::Prepend;
      Nat n = pos < s.size() ? s[pos++] : Nat(0);
      std::uint64_t cnt = fits_u64(n) ? to_u64(n) : 0;
      if (cnt > 64) cnt = 64;
      for (std::uint64_t i = 0; i < cnt && pos < s.size(); ++i)
        d.literal.push_back(s[pos++]);
      break;
    }
    case kTagCompose:
      d.kind = Kind::Compose;
      d.children.push_back(parse(s, pos, depth + 1));
      d.children.push_back(parse(s, pos, depth + 1));
      break;
    case kTagCurried:
      d.kind = Kind::Curried;
      d.children.push_back(parse(s, pos, depth + 1));
      break;
    default:
      break;
  }
  return d;
}

}  // namespace

FinSeq MachineDesc::serialize() const {
  FinSeq out;
  serialize_into(*this, out);
  return out;
}

MachineDesc MachineDesc::from_code(const Nat& code) {
  FinSeq s = seqcode::decode(code);
  std::size_t pos = 0;
  return parse(s, pos, 0);
}

MachineDesc MachineDesc::affine(Nat a, Nat b) {
  MachineDesc d;
  d.kind = Kind::Affine;
  d.a = std::move(a);
  d.b = std::move(b);
  return d;
}
MachineDesc MachineDesc::pairwise_add() {
  MachineDesc d;
  d.kind = Kind::PairwiseAdd;
  return d;
}
MachineDesc MachineDesc::evens() {
  MachineDesc d;
  d.kind = Kind::Evens;
  return d;
}
MachineDesc MachineDesc::odds() {
  MachineDesc d;
  d.kind = Kind::Odds;
  return d;
}
MachineDesc MachineDesc::compose(MachineDesc first, MachineDesc then) {
  MachineDesc d;
  d.kind = Kind::Compose;
  d.children.push_back(std::move(first));
  d.children.push_back(std::move(then));
  return d;
}
MachineDesc MachineDesc::curried(MachineDesc inner) {
  MachineDesc d;
  d.kind = Kind::Curried;
  d.children.push_back(std::move(inner));
  return d;
}

Machine::Machine(MachineDesc desc) : desc_(std::move(desc)) {}

Machine::Machine(std::string label, std::function<Stream(Stream)> fn)
    : fn_(std::move(fn)), label_(std::move(label)) {}

const MachineDesc& Machine::desc() const {
  if (!desc_) throw UsageError("machine '" + label_ + "' has no description");
  return *desc_;
}

FinSeq Machine::fueled_run(const Stream& input, std::uint64_t fuel) const {
  if (desc_) {
    Runner r(*desc_);
    FinSeq out;
    for (std::uint64_t i = 0; i < fuel; ++i) r.step(input.at(i), out);
    return out;
  }
  // truncate the input after `fuel` items and collect what still comes out;
  // emission is normalized to at most one item per consumed step
  Stream truncated = Stream::from_rule([input, fuel](const Nat& i) -> Nat {
    if (i >= Nat(fuel)) throw NeedMoreInput{};
    return input.at(i);
  });
  FinSeq out;
  try {
    Stream produced = fn_(truncated);
    for (std::uint64_t k = 0; k < fuel; ++k) out.push_back(produced.at(k));
  } catch (const NeedMoreInput&) {
  }
  return out;
}

Stream Machine::apply(Stream input) const {
  if (!desc_) return fn_(std::move(input));
  // positional transducers keep random access instead of forcing a prefix
  switch (desc_->kind) {
    case Kind::Echo:
      return input;
    case Kind::Evens:
      return input.even_part();
    case Kind::Odds:
      return input.odd_part();
    case Kind::Affine: {
      Nat a = desc_->a, b = desc_->b;
      return Stream::from_rule(
          [input, a, b](const Nat& i) { return a * input.at(i) + b; });
    }
    default:
      break;
  }
  auto desc = std::make_shared<MachineDesc>(*desc_);  // keep alive with the runner
  auto runner = std::make_shared<Runner>(*desc);
  auto in = std::make_shared<Stream>(std::move(input));
  return Stream::from_producer([desc, runner, in](std::vector<Nat>& cache) {
    runner->step(in->at(runner->steps), cache);
  });
}

Machine curry(const Machine& m) { return Machine(MachineDesc::curried(m.desc())); }

Stream evaluate(const Stream& function_name, const Stream& x) {
  MachineDesc d = MachineDesc::from_code(function_name.at(std::uint64_t(0)));
  Stream advice = function_name.drop(1);
  return Machine(d).apply(Stream::interleave(advice, x));
}

Machine uncurry(const Machine& name_producer) {
  Machine np = name_producer;
  return Machine("uncurry(" + np.label() + ")", [np](Stream pair_input) {
    Stream z = pair_input.even_part();
    Stream x = pair_input.odd_part();
    return evaluate(np.apply(z), x);
  });
}

MachineDesc random_machine_desc(std::mt19937_64& rng, int depth) {
  auto small = [&rng](std::uint64_t lo, std::uint64_t hi) {
    return Nat(lo + rng() % (hi - lo + 1));
  };
  int pick = static_cast<int>(rng() % (depth > 0 ? 10 : 9));
  switch (pick) {
    case 0:
      return MachineDesc::echo();
    case 1:
      return MachineDesc::affine(small(0, 4), small(0, 4));
    case 2:
      return MachineDesc::pairwise_add();
    case 3: {
      MachineDesc d;
      d.kind = MachineDesc::Kind::PairwiseMax;
      return d;
    }
    case 4:
      return MachineDesc::evens();
    case 5:
      return MachineDesc::odds();
    case 6: {
      MachineDesc d;
      d.kind = MachineDesc::Kind::Stutter;
      d.a = small(1, 3);
      return d;
    }
    case 7: {
      MachineDesc d;
      d.kind = MachineDesc::Kind::Drop;
      d.a = small(0, 3);
      return d;
    }
    case 8: {
      MachineDesc d;
      d.kind = MachineDesc::Kind::Prepend;
      std::uint64_t n = rng() % 4;
      for (std::uint64_t i = 0; i < n; ++i) d.literal.push_back(small(0, 6));
      return d;
    }
    default:
      return MachineDesc::compose(random_machine_desc(rng, depth - 1),
                                  random_machine_desc(rng, depth - 1));
  }
}

}  // namespace sepkit
