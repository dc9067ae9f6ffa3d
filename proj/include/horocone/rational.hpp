#pragma once

// Exact rational arithmetic on 64-bit numerator/denominator with overflow
// detection. Everything in the root-datum layer runs on these; floating
// point only appears at the final norm/log conversions.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace horocone {

class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(std::int64_t n) : num_(n), den_(1) {}
    Rat(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    static Rat parse(const std::string& s);  // "p" or "p/q"

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    double to_double() const { return double(num_) / double(den_); }
    std::string str() const {
        return den_ == 1 ? std::to_string(num_)
                         : std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(checked(a.num_, b.den_) + checked(b.num_, a.den_),
                   checked(a.den_, b.den_), from_i128{});
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat(checked(a.num_, b.den_) - checked(b.num_, a.den_),
                   checked(a.den_, b.den_), from_i128{});
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat(checked(a.num_, b.num_), checked(a.den_, b.den_), from_i128{});
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return Rat(checked(a.num_, b.den_), checked(a.den_, b.num_), from_i128{});
    }
    Rat operator-() const { Rat r; r.num_ = -num_; r.den_ = den_; return r; }
    Rat& operator+=(const Rat& b) { return *this = *this + b; }
    Rat& operator-=(const Rat& b) { return *this = *this - b; }
    Rat& operator*=(const Rat& b) { return *this = *this * b; }
    Rat& operator/=(const Rat& b) { return *this = *this / b; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return checked(a.num_, b.den_) < checked(b.num_, a.den_);
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

private:
    struct from_i128 {};
    Rat(__int128 n, __int128 d, from_i128) {
        if (d == 0) throw std::domain_error("zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        num_ = narrow(n);
        den_ = narrow(d);
    }
    void normalize() {
        if (den_ == 0) throw std::domain_error("zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : (a == 0 ? 1 : a);
    }
    static __int128 checked(std::int64_t a, std::int64_t b) {
        return __int128(a) * __int128(b);
    }
    static std::int64_t narrow(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN)
            throw std::overflow_error("rational overflow");
        return std::int64_t(v);
    }

    std::int64_t num_;
    std::int64_t den_;
};

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

RatVec rv_add(const RatVec& a, const RatVec& b);
RatVec rv_sub(const RatVec& a, const RatVec& b);
RatVec rv_scale(const Rat& c, const RatVec& a);
Rat rv_dot(const RatVec& a, const RatVec& b);
bool rv_is_zero(const RatVec& a);

// x with M x = b, Gaussian elimination over Q. Throws on singular M.
RatVec solve_linear(RatMat M, RatVec b);

}  // namespace horocone
