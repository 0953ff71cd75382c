#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace margdist {

// Error taxonomy shared by the C++ core and the C bindings.
enum class errc {
  invalid_argument,
  dimension_mismatch,
  precondition,
  parse,
  lp_failure,
  io,
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

// Internal weight-sum identities hold to 1e-12; user-supplied weights may carry
// accumulated rounding and are accepted to 1e-9 before renormalization.
inline constexpr double kWeightSumTol = 1e-12;
inline constexpr double kUserWeightTol = 1e-9;

// Default seed used by the CLI and the verification suites.
inline constexpr std::uint64_t kDefaultSeed = 42424242ULL;

// splitmix64 finalizer.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Per-draw stream key: deterministic in (seed, index) and independent of the
// order draws are consumed in, so parallel or partial replays agree.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x9e3779b97f4a7c15ULL));
}

}  // namespace margdist
