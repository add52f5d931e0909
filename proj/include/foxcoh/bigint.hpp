#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <limits>
#include <stdexcept>
#include <string>

namespace foxcoh {

// Exact integer type used for all ring coefficients and matrix entries.
using Int = boost::multiprecision::cpp_int;

struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text (presentation files, word syntax, candidate JSON).
struct parse_error : error {
    parse_error(const std::string& what, int line = 0, int col = 0)
        : error(line > 0 ? "line " + std::to_string(line) + ":" + std::to_string(col) + ": " + what
                         : what),
          line(line),
          col(col) {}
    int line, col;
};

// Rewriting exceeded its step budget (non-terminating user system).
struct budget_error : error {
    using error::error;
};

// A value left the truncation window of a finite model.
struct escape_error : error {
    using error::error;
};

inline long long to_ll_checked(const Int& v) {
    static const Int lo = std::numeric_limits<long long>::min();
    static const Int hi = std::numeric_limits<long long>::max();
    if (v < lo || v > hi) throw budget_error("normal form exponent exceeds representable range");
    return v.convert_to<long long>();
}

inline long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw budget_error("integer exponent overflow");
    return r;
}

inline long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw budget_error("integer exponent overflow");
    return r;
}

} // namespace foxcoh
