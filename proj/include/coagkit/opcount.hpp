#pragma once

#include <cstdint>

namespace coagkit {

// Floating-point operation tally for one right-hand-side / flux assembly.
// Integer counters only, so counts are identical across runs and machines.
// Counting rule: each of {+, -, *, /} is 1; ln/exp and other transcendental
// evaluations count 1 under `special`; sign flips are free.
struct OpCount {
  std::uint64_t adds = 0;
  std::uint64_t muls = 0;
  std::uint64_t divs = 0;
  std::uint64_t special = 0;

  std::uint64_t total() const { return adds + muls + divs + special; }

  OpCount& operator+=(const OpCount& o) {
    adds += o.adds;
    muls += o.muls;
    divs += o.divs;
    special += o.special;
    return *this;
  }
};

namespace detail {

// Policy types for the scheme assemblies: the uncounted instantiation
// compiles to nothing, the counted one tallies into an OpCount. Both
// instantiations share the same arithmetic, so results are bit-identical.
struct NoCount {
  static constexpr bool counting = false;
  void add(std::uint64_t = 1) {}
  void mul(std::uint64_t = 1) {}
  void div(std::uint64_t = 1) {}
  void spec(std::uint64_t = 1) {}
};

struct CountOps {
  static constexpr bool counting = true;
  OpCount* out;
  void add(std::uint64_t n = 1) { out->adds += n; }
  void mul(std::uint64_t n = 1) { out->muls += n; }
  void div(std::uint64_t n = 1) { out->divs += n; }
  void spec(std::uint64_t n = 1) { out->special += n; }
};

}  // namespace detail
}  // namespace coagkit
