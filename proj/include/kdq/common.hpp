#pragma once

// Shared primitives: error type, deterministic RNG, number formatting.

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace kdq {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Failure categories surfaced through the public API.
enum class Err {
    NotSquare,
    NotHermitian,
    InvalidDimension,
    InvalidRank,
    DimensionMismatch,
    ZeroPostselectionProbability,
    ZeroOperator,
    DegenerateShiftedOperator,
    BadParameterCount,
    NotQubit,
    SchemaError,
    InvariantError,
    UnknownSuite,
    IoError,
    Internal,
};

inline const char* err_name(Err e) {
    switch (e) {
        case Err::NotSquare: return "NotSquare";
        case Err::NotHermitian: return "NotHermitian";
        case Err::InvalidDimension: return "InvalidDimension";
        case Err::InvalidRank: return "InvalidRank";
        case Err::DimensionMismatch: return "DimensionMismatch";
        case Err::ZeroPostselectionProbability: return "ZeroPostselectionProbability";
        case Err::ZeroOperator: return "ZeroOperator";
        case Err::DegenerateShiftedOperator: return "DegenerateShiftedOperator";
        case Err::BadParameterCount: return "BadParameterCount";
        case Err::NotQubit: return "NotQubit";
        case Err::SchemaError: return "SchemaError";
        case Err::InvariantError: return "InvariantError";
        case Err::UnknownSuite: return "UnknownSuite";
        case Err::IoError: return "IoError";
        case Err::Internal: return "Internal";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(Err code, const std::string& msg)
        : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
    Err code() const { return code_; }

  private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool ok, Err code, const std::string& msg) {
    if (!ok) fail(code, msg);
}

// --- deterministic random numbers ------------------------------------------

// splitmix64 finalizer; used to derive independent stream seeds from a master
// seed so that stream k is a pure function of (master, k).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ (0x9E3779B97F4A7C15ull * (stream + 1)));
}

// mt19937_64 with hand-rolled uniform/normal draws.  The standard library's
// distribution objects are implementation-defined, so sampling through them
// would not reproduce across toolchains; these algorithms are pinned.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal via the polar method (second draw cached)
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u = 0.0, v = 0.0, s = 0.0;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        cached_ = v * f;
        have_cached_ = true;
        return u * f;
    }

    // complex standard normal (independent real/imag parts)
    cplx cnormal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

    std::uint64_t raw() { return eng_(); }

    // uniform index in [0, n)
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }

  private:
    std::mt19937_64 eng_;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

// Shortest decimal string that round-trips to the same double.
inline std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace kdq
