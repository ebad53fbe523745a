// Exact arithmetic types used throughout: arbitrary-precision integers and
// rationals. No floating point is used anywhere in the library.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace torfan {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }

inline int sign(const Rat& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }
inline int sign(const Int& z) { return z > 0 ? 1 : (z < 0 ? -1 : 0); }

// Thrown on malformed input (bad index, zero ray, broken JSON, ...).
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a mathematical precondition or theorem-backed invariant fails.
struct FanError : std::runtime_error {
    explicit FanError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace torfan
