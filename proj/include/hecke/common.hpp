#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hecke {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Thrown when an interval-based sign computation runs out of refinement
/// steps (only possible for q outside the exact fast paths).
struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when an enumeration (coset table, BFS closure, reduction loop)
/// exceeds its configured cap.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::size_t hash_combine(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

/// Reads a positive integer cap from the environment, falling back to
/// `fallback` when unset or unparsable.
long long env_cap(const char* name, long long fallback);

} // namespace hecke
