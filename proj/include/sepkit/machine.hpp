#pragma once

#include <optional>
#include <random>
#include <string>

#include "sepkit/seqcode.hpp"
#include "sepkit/stream.hpp"

namespace sepkit {

// Serializable description of a stream transducer. One step consumes exactly
// one input item and emits zero or more output items, so output at fuel f
// depends only on the first f input items and is prefix-monotone in f.
struct MachineDesc {
  enum class Kind : std::uint8_t {
    Echo,         // emit x
    Affine,       // emit a*x + b
    PairwiseAdd,  // consume two items, emit their sum
    PairwiseMax,  // consume two items, emit the larger
    Evens,        // emit items at even input positions
    Odds,         // emit items at odd input positions
    Stutter,      // emit x, a times
    Drop,         // swallow the first a items, then echo
    Prepend,      // emit the literal once, then echo
    Compose,      // feed child 0's output through child 1
    Curried,      // emit code(child 0), then echo (builds a function name)
  };

  Kind kind = Kind::Echo;
  Nat a, b;
  FinSeq literal;
  std::vector<MachineDesc> children;

  FinSeq serialize() const;
  Nat code() const { return seqcode::encode(serialize()); }
  // total: anything unparseable normalizes to Echo
  static MachineDesc from_code(const Nat& code);

  static MachineDesc echo() { return {}; }
  static MachineDesc affine(Nat a, Nat b);
  static MachineDesc pairwise_add();
  static MachineDesc evens();
  static MachineDesc odds();
  static MachineDesc compose(MachineDesc first, MachineDesc then);
  static MachineDesc curried(MachineDesc inner);
};

// A realizer: transforms points of Baire space. Machines built from a
// MachineDesc carry fuel-step semantics and serialize; machines built from a
// plain stream function get fueled semantics by truncating their input.
class Machine {
 public:
  Machine() : Machine(MachineDesc::echo()) {}
  explicit Machine(MachineDesc desc);
  Machine(std::string label, std::function<Stream(Stream)> fn);

  bool has_desc() const { return desc_.has_value(); }
  const MachineDesc& desc() const;
  const std::string& label() const { return label_; }

  // output prefix emitted within `fuel` steps
  FinSeq fueled_run(const Stream& input, std::uint64_t fuel) const;
  Stream apply(Stream input) const;

 private:
  std::optional<MachineDesc> desc_;
  std::function<Stream(Stream)> fn_;
  std::string label_;
};

// Evaluation and type conversion for function names: a name k*p denotes the
// machine decoded from k run with advice p, i.e. name(x) = decode(k)(p (+) x).
Machine curry(const Machine& m);
Stream evaluate(const Stream& function_name, const Stream& x);
Machine uncurry(const Machine& name_producer);

MachineDesc random_machine_desc(std::mt19937_64& rng, int depth = 2);

}  // namespace sepkit
