#include "horocone/rational.hpp"

#include <cstdlib>

namespace horocone {

Rat Rat::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(std::stoll(s));
        return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
        throw std::invalid_argument("bad rational literal: \"" + s + "\"");
    }
}

RatVec rv_add(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RatVec rv_sub(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RatVec rv_scale(const Rat& c, const RatVec& a) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

Rat rv_dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    Rat s;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool rv_is_zero(const RatVec& a) {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

RatVec solve_linear(RatMat M, RatVec b) {
    const size_t n = M.size();
    if (n == 0 || M[0].size() != n || b.size() != n)
        throw std::invalid_argument("solve_linear: need square system");
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && M[piv][col].is_zero()) ++piv;
        if (piv == n) throw std::domain_error("solve_linear: singular matrix");
        std::swap(M[piv], M[col]);
        std::swap(b[piv], b[col]);
        Rat inv = Rat(1) / M[col][col];
        for (size_t j = col; j < n; ++j) M[col][j] *= inv;
        b[col] *= inv;
        for (size_t row = 0; row < n; ++row) {
            if (row == col || M[row][col].is_zero()) continue;
            Rat f = M[row][col];
            for (size_t j = col; j < n; ++j) M[row][j] -= f * M[col][j];
            b[row] -= f * b[col];
        }
    }
    return b;
}

}  // namespace horocone
