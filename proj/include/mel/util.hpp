#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace mel {

// Recoverable failures (bad input, domain violations) throw mel::error.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(const std::string& msg) { throw error(msg); }

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw error(msg);
}

// Deterministic splitmix64 stream. std:: distributions are
// implementation-defined, so certificates never touch them.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform-ish value in [0, n), n > 0; deterministic across platforms
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

// Runs fn(begin, end) on disjoint chunks of [0, n), possibly on several
// threads. Callers own aggregation; shared inputs must be immutable.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

}  // namespace mel
