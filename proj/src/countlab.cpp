#include "horocone/countlab.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

namespace horocone::countlab {

CountingExponents counting_exponents(const RootDatum& datum, const LineBundleChar& bundle) {
    if (int(bundle.E.subset.size()) >= datum.rank())
        throw std::invalid_argument("E must be a proper subset of the simple roots");
    for (int a = 0; a < datum.rank(); ++a) {
        if (bundle.E.contains(a)) continue;
        auto it = bundle.c.find(a);
        if (it == bundle.c.end() || it->second < 1)
            throw std::invalid_argument("line bundle needs a positive coefficient on "
                                        "every simple root outside E");
    }

    auto rho = rootsys::rho_prime(datum, bundle.E);
    CountingExponents out;
    out.F_chi = bundle.E;
    bool first = true;
    for (int a = 0; a < datum.rank(); ++a) {
        if (bundle.E.contains(a)) continue;
        Rat ma = (*rho.fw_coords)[a];
        out.m[a] = ma;
        Rat ratio = ma / Rat(bundle.c.at(a));
        if (first || ratio > out.a) { out.a = ratio; first = false; }
    }
    for (int a = 0; a < datum.rank(); ++a) {
        if (bundle.E.contains(a)) continue;
        if (out.m[a] / Rat(bundle.c.at(a)) == out.a) out.F_chi.subset.insert(a);
    }
    out.b = int(out.F_chi.subset.size() - bundle.E.subset.size());
    return out;
}

namespace {

std::int64_t igcd(std::int64_t a, std::int64_t b) {
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

// visit every primitive vector in Z^n (n = 2, 3) with norm^2 <= M2, one
// representative per +- pair (first nonzero coordinate positive)
template <typename F>
void visit_primitive(int n, std::int64_t M2, LoopOrder order, F&& f) {
    std::int64_t r = 0;
    while ((r + 1) * (r + 1) <= M2) ++r;
    if (n == 2) {
        if (order == LoopOrder::Forward) {
            for (std::int64_t x = 0; x <= r; ++x) {
                std::int64_t ymax2 = M2 - x * x;
                for (std::int64_t y = (x == 0 ? 1 : -r); y <= r; ++y) {
                    if (y * y > ymax2) continue;
                    if (igcd(x, y) != 1) continue;
                    f(std::array<std::int64_t, 3>{x, y, 0});
                }
            }
        } else {
            for (std::int64_t y = -r; y <= r; ++y)
                for (std::int64_t x = (y > 0 ? 0 : 1); x <= r; ++x) {
                    if (x * x + y * y > M2) continue;
                    if (igcd(x, y) != 1) continue;
                    f(std::array<std::int64_t, 3>{x, y, 0});
                }
        }
        return;
    }
    if (n != 3) throw std::invalid_argument("only dimensions 2 and 3 are enumerated");
    auto emit = [&](std::int64_t x, std::int64_t y, std::int64_t z) {
        if (x * x + y * y + z * z > M2) return;
        // canonical: first nonzero coordinate positive
        if (x < 0 || (x == 0 && (y < 0 || (y == 0 && z <= 0)))) return;
        if (x == 0 && y == 0 && z == 0) return;
        if (igcd(igcd(x, y), z) != 1) return;
        f(std::array<std::int64_t, 3>{x, y, z});
    };
    if (order == LoopOrder::Forward) {
        for (std::int64_t x = 0; x <= r; ++x)
            for (std::int64_t y = -r; y <= r; ++y) {
                if (x * x + y * y > M2) continue;
                for (std::int64_t z = -r; z <= r; ++z) emit(x, y, z);
            }
    } else {
        for (std::int64_t z = -r; z <= r; ++z)
            for (std::int64_t y = -r; y <= r; ++y) {
                if (z * z + y * y > M2) continue;
                for (std::int64_t x = 0; x <= r; ++x) emit(x, y, z);
            }
    }
}

}  // namespace

std::uint64_t count_projective(int n, double T, LoopOrder order) {
    if (n < 2) throw std::invalid_argument("projective dimension needs n >= 2");
    if (T < 1) return 0;
    std::int64_t M2 = std::int64_t(T * T + 1e-9);
    std::uint64_t count = 0;
    visit_primitive(n, M2, order, [&](const std::array<std::int64_t, 3>&) { ++count; });
    return count;
}

CountSeries count_projective_series(int n, const std::vector<double>& thresholds) {
    std::vector<std::int64_t> t2;
    for (double T : thresholds) t2.push_back(std::int64_t(T * T + 1e-9));
    if (!std::is_sorted(t2.begin(), t2.end()))
        throw std::invalid_argument("thresholds must be increasing");
    std::vector<std::uint64_t> bucket(t2.size() + 1, 0);
    std::int64_t M2 = t2.empty() ? 0 : t2.back();
    visit_primitive(n, M2, LoopOrder::Forward, [&](const std::array<std::int64_t, 3>& v) {
        std::int64_t n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        auto it = std::lower_bound(t2.begin(), t2.end(), n2);
        ++bucket[it - t2.begin()];
    });
    CountSeries out;
    std::uint64_t run = 0;
    for (size_t i = 0; i < t2.size(); ++i) {
        run += bucket[i];
        out.points.push_back({thresholds[i], run});
    }
    return out;
}

namespace {

using IVec = std::array<std::int64_t, 3>;

std::int64_t dot3(const IVec& a, const IVec& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

IVec combine(std::int64_t s, const IVec& a, std::int64_t t, const IVec& b) {
    return {s * a[0] + t * b[0], s * a[1] + t * b[1], s * a[2] + t * b[2]};
}

// extended gcd: g = gcd(a, b) = x a + y b
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
    if (b == 0) {
        x = a < 0 ? -1 : 1;
        y = 0;
        return a < 0 ? -a : a;
    }
    std::int64_t x1, y1;
    std::int64_t g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// basis of the saturated rank-2 lattice v-perp in Z^3 (v primitive), via
// unimodular column operations bringing v to (1, 0, 0)
std::pair<IVec, IVec> perp_basis(const IVec& v) {
    IVec c0{1, 0, 0}, c1{0, 1, 0}, c2{0, 0, 1};
    std::int64_t x, y;
    std::int64_t g = ext_gcd(v[0], v[1], x, y);
    IVec n0 = combine(x, c0, y, c1);
    IVec n1 = combine(-v[1] / g, c0, v[0] / g, c1);
    std::int64_t p, q;
    std::int64_t g2 = ext_gcd(g, v[2], p, q);
    if (g2 != 1) throw std::invalid_argument("vector is not primitive");
    IVec m0 = combine(p, n0, q, c2);
    IVec m2 = combine(-v[2], n0, g, c2);
    (void)m0;
    return {n1, m2};  // the two kernel columns
}

void gauss_reduce(IVec& b1, IVec& b2) {
    for (;;) {
        if (dot3(b1, b1) > dot3(b2, b2)) std::swap(b1, b2);
        std::int64_t n1 = dot3(b1, b1);
        std::int64_t B = dot3(b1, b2);
        // reduced once 2|B| <= |b1|^2; rounding ties would otherwise cycle
        if (2 * std::llabs(B) <= n1) return;
        std::int64_t mu = std::llround(double(B) / double(n1));
        b2 = combine(1, b2, -mu, b1);
    }
}

double powi(double base, int e) {
    double r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// count primitive w mod +- in the lattice spanned by (b1, b2) with
// lo < (|w|^2)^{c_in} and |o|^{2 c_out} * (|w|^2)^{c_in} <= T2sq
std::uint64_t count_inner(const IVec& b1i, const IVec& b2i, double po, int c_in,
                          double T2, double lo) {
    double cap = T2 / po;  // bound on (|w|^2)^{c_in}
    if (cap <= lo) return 0;
    double w2max = std::pow(cap, 1.0 / c_in);
    IVec b1 = b1i, b2 = b2i;
    gauss_reduce(b1, b2);
    double A = double(dot3(b1, b1)), B = double(dot3(b1, b2)), C = double(dot3(b2, b2));
    double det = A * C - B * B;
    std::uint64_t count = 0;
    std::int64_t bmax = std::int64_t(std::sqrt(std::max(0.0, w2max * A / det)) + 1);
    for (std::int64_t b = 0; b <= bmax; ++b) {
        double disc = A * w2max - det * double(b) * double(b);
        if (disc < 0) continue;
        double root = std::sqrt(disc);
        std::int64_t alo = std::int64_t(std::ceil((-B * b - root) / A - 1e-9));
        std::int64_t ahi = std::int64_t(std::floor((-B * b + root) / A + 1e-9));
        for (std::int64_t a = alo; a <= ahi; ++a) {
            if (b == 0 && a <= 0) continue;  // mod +-: b > 0, or b = 0 and a > 0
            if (igcd(a, b) != 1) continue;   // primitive in the saturated lattice
            std::int64_t w2 = dot3(combine(a, b1, b, b2), combine(a, b1, b, b2));
            double pw = powi(double(w2), c_in);
            if (pw <= lo) continue;
            if (po * pw > T2) continue;
            ++count;
        }
    }
    return count;
}

// pairs (outer o, inner w) with o.w = 0, |o|^{2 c_out} <= cap_out,
// |w|^{2 c_in} > min_in, product of the height powers <= T2 = T^2
std::uint64_t flag_engine(int c_out, int c_in, double T2, double cap_out, double min_in) {
    double o2max = std::pow(cap_out, 1.0 / c_out);
    std::int64_t M2 = std::int64_t(o2max + 1e-9);
    std::uint64_t total = 0;
    visit_primitive(3, M2, LoopOrder::Forward, [&](const IVec& v) {
        double po = powi(double(dot3(v, v)), c_out);
        if (po > cap_out) return;
        auto [b1, b2] = perp_basis(v);
        total += count_inner(b1, b2, po, c_in, T2, min_in);
    });
    return total;
}

}  // namespace

std::uint64_t count_flags_sl3(int c1, int c2, double T, FlagStrategy strategy) {
    if (c1 < 1 || c2 < 1) throw std::invalid_argument("height exponents must be >= 1");
    if (T < 1) return 0;
    double T2 = T * T;
    switch (strategy) {
        case FlagStrategy::VOuter:
            return flag_engine(c1, c2, T2, T2, 0.0);
        case FlagStrategy::WOuter:
            return flag_engine(c2, c1, T2, T2, 0.0);
        default: {
            // split so the two outer enumerations balance: v outer while
            // |v|^{2 c1} <= S = (T^2)^{c1/(c1+c2)}, w outer (with the inner
            // v constrained to |v|^{2 c1} > S) for the remainder
            double S = std::pow(T2, c1 / double(c1 + c2));
            return flag_engine(c1, c2, T2, S, 0.0) + flag_engine(c2, c1, T2, T2 / S, S);
        }
    }
}

CountSeries count_flags_sl3_series(int c1, int c2, const std::vector<double>& thresholds,
                                   FlagStrategy strategy) {
    CountSeries out;
    for (double T : thresholds) out.points.push_back({T, count_flags_sl3(c1, c2, T, strategy)});
    return out;
}

std::uint64_t count_horocycle_lifts(double R) {
    if (R < 0) throw std::invalid_argument("radius must be nonnegative");
    // horizontal lift through i, plus the horocycle at p/q (diameter 1/q^2)
    // whenever dist(i, .) = log(p^2 + q^2) <= R
    double cap = std::exp(R);
    std::uint64_t count = 1;
    for (std::int64_t q = 1; double(q) * double(q) <= cap; ++q) {
        std::int64_t pmax = std::int64_t(std::sqrt(cap - double(q) * double(q)) + 1);
        for (std::int64_t p = -pmax; p <= pmax; ++p) {
            if (double(p) * double(p) + double(q) * double(q) > cap) continue;
            if (igcd(p, q) != 1) continue;
            ++count;
        }
    }
    return count;
}

namespace {

struct Ols {
    // y ~ X beta with an intercept column prepended
    std::vector<double> beta, err;
};

Ols ols_fit(const std::vector<std::vector<double>>& X, const std::vector<double>& y) {
    const size_t n = y.size(), k = X[0].size() + 1;
    std::vector<std::vector<double>> M(k, std::vector<double>(k, 0.0));
    std::vector<double> rhs(k, 0.0);
    auto reg = [&](size_t i, size_t j) { return j == 0 ? 1.0 : X[i][j - 1]; };
    for (size_t i = 0; i < n; ++i)
        for (size_t a = 0; a < k; ++a) {
            rhs[a] += reg(i, a) * y[i];
            for (size_t b = 0; b < k; ++b) M[a][b] += reg(i, a) * reg(i, b);
        }
    // invert M (tiny, k <= 3) by Gauss-Jordan
    std::vector<std::vector<double>> inv(k, std::vector<double>(k, 0.0));
    for (size_t i = 0; i < k; ++i) inv[i][i] = 1.0;
    auto A = M;
    for (size_t c = 0; c < k; ++c) {
        size_t p = c;
        for (size_t r2 = c + 1; r2 < k; ++r2)
            if (std::fabs(A[r2][c]) > std::fabs(A[p][c])) p = r2;
        if (A[p][c] == 0) throw std::runtime_error("singular design matrix");
        std::swap(A[p], A[c]);
        std::swap(inv[p], inv[c]);
        double d = A[c][c];
        for (size_t j = 0; j < k; ++j) { A[c][j] /= d; inv[c][j] /= d; }
        for (size_t r2 = 0; r2 < k; ++r2) {
            if (r2 == c) continue;
            double f = A[r2][c];
            for (size_t j = 0; j < k; ++j) { A[r2][j] -= f * A[c][j]; inv[r2][j] -= f * inv[c][j]; }
        }
    }
    Ols out;
    out.beta.assign(k, 0.0);
    for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b) out.beta[a] += inv[a][b] * rhs[b];
    double rss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double pred = 0.0;
        for (size_t a = 0; a < k; ++a) pred += reg(i, a) * out.beta[a];
        rss += (y[i] - pred) * (y[i] - pred);
    }
    double sigma2 = n > k ? rss / double(n - k) : 0.0;
    out.err.assign(k, 0.0);
    for (size_t a = 0; a < k; ++a) out.err[a] = std::sqrt(sigma2 * inv[a][a]);
    return out;
}

}  // namespace

FitResult fit_growth(const CountSeries& series, FitModel model, double fixed_a) {
    const auto& pts = series.points;
    if (pts.size() < 5) throw std::invalid_argument("need at least 5 points to fit");
    for (size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].N == 0) throw std::invalid_argument("zero counts cannot be fit in log space");
        if (i > 0 && !(pts[i].T > pts[i - 1].T))
            throw std::invalid_argument("thresholds must be strictly increasing");
    }
    FitResult out;
    out.model = model;
    std::vector<std::vector<double>> X;
    std::vector<double> y;
    for (const auto& p : pts) {
        double ln_n = std::log(double(p.N));
        if (model == FitModel::Exponential) {
            X.push_back({p.T});
            y.push_back(ln_n);
        } else if (model == FitModel::Power) {
            X.push_back({std::log(p.T)});
            y.push_back(ln_n);
        } else {
            if (!(p.T > std::exp(1.0)))
                throw std::invalid_argument("power_log fit needs T > e");
            double lt = std::log(p.T), llt = std::log(lt);
            if (std::isnan(fixed_a)) {
                X.push_back({lt, llt});
                y.push_back(ln_n);
            } else {
                X.push_back({llt});
                y.push_back(ln_n - fixed_a * lt);
            }
        }
    }
    Ols fit = ols_fit(X, y);
    out.logC = fit.beta[0];
    if (model == FitModel::PowerLog) {
        if (std::isnan(fixed_a)) {
            out.a = fit.beta[1];
            out.a_err = fit.err[1];
            out.b = fit.beta[2] + 1.0;
            out.b_err = fit.err[2];
        } else {
            out.a = fixed_a;
            out.a_err = 0.0;
            out.b = fit.beta[1] + 1.0;
            out.b_err = fit.err[1];
        }
    } else {
        out.a = fit.beta[1];
        out.a_err = fit.err[1];
    }
    return out;
}

XiReport xi_tail_check(double s, int Q_max) {
    if (Q_max < 1) throw std::invalid_argument("Q_max must be positive");
    XiReport out;
    out.s = s;
    out.divergence_expected = s <= 1.0;
    std::map<int, XiShell> shells;
    for (std::int64_t d = 0; d <= Q_max; ++d) {
        for (std::int64_t c = (d == 0 ? 1 : -Q_max); c <= Q_max; ++c) {
            if (d == 0 && c != 1) continue;  // (1, 0) is the only rep with d = 0
            if (igcd(c, d) != 1) continue;
            double n2 = double(c) * double(c) + double(d) * double(d);
            int shell = int(std::floor(std::log2(n2)));
            auto& sh = shells[shell];
            sh.n = shell;
            ++sh.count;
            sh.mass += std::pow(n2, -s);
        }
    }
    double cum = 0.0;
    for (auto& [n, sh] : shells) {
        sh.bound = double(sh.count) * std::pow(2.0, -s * n);
        cum += sh.mass;
        sh.cumulative = cum;
        out.shells.push_back(sh);
    }
    out.total = cum;
    return out;
}

}  // namespace horocone::countlab
