#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qsym {

// Exact rational, normalized: den > 0, gcd(num, den) = 1.
// Used for phase angles stored mod 1 (log-space U(1) values).
struct Rat {
    long long num = 0;
    long long den = 1;

    Rat() = default;
    Rat(long long n, long long d = 1) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("Rat: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    static long long checked_mul(long long a, long long b) {
        __int128 p = static_cast<__int128>(a) * b;
        if (p > INT64_MAX || p < INT64_MIN) throw std::overflow_error("Rat: overflow");
        return static_cast<long long>(p);
    }

    Rat operator+(const Rat& o) const {
        return Rat(checked_mul(num, o.den) + checked_mul(o.num, den), checked_mul(den, o.den));
    }
    Rat operator-(const Rat& o) const {
        return Rat(checked_mul(num, o.den) - checked_mul(o.num, den), checked_mul(den, o.den));
    }
    Rat operator*(const Rat& o) const { return Rat(checked_mul(num, o.num), checked_mul(den, o.den)); }
    Rat operator-() const { return Rat(-num, den); }
    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rat& o) const { return !(*this == o); }

    bool is_zero() const { return num == 0; }

    // Representative in [0, 1).
    Rat mod1() const {
        long long r = num % den;
        if (r < 0) r += den;
        return Rat(r, den);
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    static Rat parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(std::stoll(s), 1);
        return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    }
};

// Distance of x to the nearest integer.
inline double dist_to_integer(double x) {
    double r = x - std::llround(x);
    return r < 0 ? -r : r;
}

// Round x to the nearest p/q with q | max_den, reduced mod 1.
// Returns the rational; *residual receives |x - p/q| measured mod 1.
inline Rat round_to_denominator(double x, long long max_den, double* residual = nullptr) {
    long long p = std::llround(x * static_cast<double>(max_den));
    double r = x - static_cast<double>(p) / static_cast<double>(max_den);
    if (residual) *residual = r < 0 ? -r : r;
    long long pm = p % max_den;
    if (pm < 0) pm += max_den;
    return Rat(pm, max_den);
}

}  // namespace qsym
