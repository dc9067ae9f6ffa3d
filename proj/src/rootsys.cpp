#include "horocone/rootsys.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace horocone::rootsys {

namespace {

RatVec basis_vec(int dim, int i, Rat v = Rat(1)) {
    RatVec e(dim, Rat(0));
    e[i] = v;
    return e;
}

Rat det_rat(RatMat m) {
    const size_t n = m.size();
    Rat det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) return Rat(0);
        if (p != c) { std::swap(m[p], m[c]); det = -det; }
        det *= m[c][c];
        Rat inv = Rat(1) / m[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            if (m[r][c].is_zero()) continue;
            Rat f = m[r][c] * inv;
            for (size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return det;
}

}  // namespace

Rat RootDatum::inner(const RatVec& x, const RatVec& y) const {
    if (x.size() != gram_.size() || y.size() != gram_.size())
        throw std::invalid_argument("inner: dimension mismatch");
    Rat s;
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < y.size(); ++j) s += x[i] * gram_[i][j] * y[j];
    }
    return s;
}

RatVec RootDatum::coroot(const RatVec& root) const {
    Rat n2 = inner(root, root);
    if (!(n2 > Rat(0))) throw ValidationError("coroot of a null vector");
    return rv_scale(Rat(2) / n2, root);
}

void RootDatum::set_metric_scale(double s) {
    if (!(s > 0)) throw std::invalid_argument("metric scale must be positive");
    metric_scale_ = s;
}

double RootDatum::norm(const RatVec& x) const {
    return std::sqrt(metric_scale_ * inner(x, x).to_double());
}

void RootDatum::finalize() {
    const int r = rank();
    const int dim = ambient_dim();
    if (r < 1) throw ValidationError("rank must be positive");
    for (const auto& a : simple_roots_)
        if (int(a.size()) != dim) throw ValidationError("simple root dimension mismatch");
    if (int(gram_.size()) != dim) throw ValidationError("gram dimension mismatch");
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (gram_[i][j] != gram_[j][i]) throw ValidationError("gram not symmetric");
    // positive definiteness via leading principal minors
    for (int k = 1; k <= dim; ++k) {
        RatMat sub(k, RatVec(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub[i][j] = gram_[i][j];
        if (!(det_rat(sub) > Rat(0))) throw ValidationError("gram not positive definite");
    }
    if (int(ratios_.size()) != r) throw ValidationError("need one duality ratio per simple root");
    for (const auto& q : ratios_)
        if (!(q > Rat(0))) throw ValidationError("duality ratio must be positive");

    for (const auto& a : simple_roots_)
        if (!(inner(a, a) > Rat(0))) throw ValidationError("simple root with nonpositive norm");

    // express every positive root in the simple basis; must be a nonnegative
    // integer combination
    RatMat G(r, RatVec(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) G[i][j] = inner(simple_roots_[i], simple_roots_[j]);
    for (auto& phi : positive_roots_) {
        if (int(phi.v.size()) != dim) throw ValidationError("positive root dimension mismatch");
        if (!(inner(phi.v, phi.v) > Rat(0)))
            throw ValidationError("positive root with nonpositive norm");
        if (phi.mult < 1) throw ValidationError("root multiplicity must be positive");
        RatVec rhs(r);
        for (int i = 0; i < r; ++i) rhs[i] = inner(simple_roots_[i], phi.v);
        RatVec c = solve_linear(G, rhs);
        RatVec recon(dim, Rat(0));
        for (int i = 0; i < r; ++i) recon = rv_add(recon, rv_scale(c[i], simple_roots_[i]));
        if (recon != phi.v)
            throw ValidationError("positive root outside the span of the simple roots");
        for (const auto& ci : c)
            if (!ci.is_integer() || ci < Rat(0))
                throw ValidationError("positive root is not a nonnegative integer "
                                      "combination of simple roots");
        phi.simple_coords = c;
    }

    // fundamental weights: lambda_a = sum_g c_g alpha_g with
    // (lambda_a, beta_coroot) = ratio_a * delta_ab
    bool had_weights = !weights_.empty();
    std::vector<RatVec> computed;
    for (int a = 0; a < r; ++a) {
        RatMat M(r, RatVec(r));
        RatVec rhs(r, Rat(0));
        for (int b = 0; b < r; ++b) {
            RatVec bco = coroot(simple_roots_[b]);
            for (int g = 0; g < r; ++g) M[b][g] = inner(simple_roots_[g], bco);
            if (b == a) rhs[b] = ratios_[a];
        }
        RatVec c;
        try {
            c = solve_linear(M, rhs);
        } catch (const std::domain_error&) {
            throw ValidationError("singular Cartan system; malformed datum");
        }
        RatVec lam(dim, Rat(0));
        for (int g = 0; g < r; ++g) lam = rv_add(lam, rv_scale(c[g], simple_roots_[g]));
        computed.push_back(lam);
    }
    if (had_weights) {
        if (weights_.size() != computed.size())
            throw ValidationError("weight count mismatch");
        for (int a = 0; a < r; ++a)
            if (weights_[a] != computed[a])
                throw ValidationError("supplied fundamental weights violate "
                                      "(lambda_a, beta_coroot) = ratio_a * delta_ab");
    }
    weights_ = std::move(computed);

    // split-case sanity: sigma_beta permutes the positive roots other than beta
    bool reduced = true;
    for (const auto& phi : positive_roots_)
        if (phi.mult != 1) reduced = false;
    if (split_ && reduced) {
        for (int b = 0; b < r; ++b) {
            for (const auto& phi : positive_roots_) {
                if (phi.v == simple_roots_[b]) continue;
                RatVec img = reflect(*this, phi.v, b);
                bool found = false;
                for (const auto& psi : positive_roots_)
                    if (psi.v == img) { found = true; break; }
                if (!found)
                    throw ValidationError("simple reflection does not permute the "
                                          "positive roots");
            }
        }
    }
}

RootDatum build_root_datum(const std::string& type) {
    if (type.size() < 2) throw std::invalid_argument("type must look like A2, B3, G2");
    int r = std::stoi(type.substr(1));
    return build_root_datum(type.substr(0, 1), r);
}

RootDatum build_root_datum(const std::string& family, int r) {
    RootDatum d;
    d.name_ = family + std::to_string(r);
    if (r < 1) throw std::invalid_argument("rank must be >= 1");
    auto add = [&](RatVec v) { d.positive_roots_.push_back({std::move(v), 1, {}}); };

    if (family == "A") {
        int n = r + 1;
        for (int i = 0; i < r; ++i) {
            RatVec a(n, Rat(0));
            a[i] = Rat(1);
            a[i + 1] = Rat(-1);
            d.simple_roots_.push_back(a);
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                RatVec v(n, Rat(0));
                v[i] = Rat(1);
                v[j] = Rat(-1);
                add(v);
            }
        d.gram_.assign(n, RatVec(n, Rat(0)));
        for (int i = 0; i < n; ++i) d.gram_[i][i] = Rat(1);
    } else if (family == "B" || family == "C" || family == "D") {
        int n = r;
        if ((family == "B" || family == "C") && n < 2)
            throw std::invalid_argument(family + ": rank must be >= 2");
        if (family == "D" && n < 3) throw std::invalid_argument("D: rank must be >= 3");
        for (int i = 0; i + 1 < n; ++i) {
            RatVec a(n, Rat(0));
            a[i] = Rat(1);
            a[i + 1] = Rat(-1);
            d.simple_roots_.push_back(a);
        }
        if (family == "B") d.simple_roots_.push_back(basis_vec(n, n - 1));
        if (family == "C") d.simple_roots_.push_back(basis_vec(n, n - 1, Rat(2)));
        if (family == "D") {
            RatVec a(n, Rat(0));
            a[n - 2] = Rat(1);
            a[n - 1] = Rat(1);
            d.simple_roots_.push_back(a);
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                RatVec v(n, Rat(0)), w(n, Rat(0));
                v[i] = Rat(1);
                v[j] = Rat(-1);
                w[i] = Rat(1);
                w[j] = Rat(1);
                add(v);
                add(w);
            }
        if (family == "B")
            for (int i = 0; i < n; ++i) add(basis_vec(n, i));
        if (family == "C")
            for (int i = 0; i < n; ++i) add(basis_vec(n, i, Rat(2)));
        d.gram_.assign(n, RatVec(n, Rat(0)));
        for (int i = 0; i < n; ++i) d.gram_[i][i] = Rat(1);
    } else if (family == "G") {
        if (r != 2) throw std::invalid_argument("G: only G2 exists");
        // trace-zero realization in R^3: alpha short, beta long
        RatVec alpha = {Rat(0), Rat(1), Rat(-1)};
        RatVec beta = {Rat(1), Rat(-2), Rat(1)};
        d.simple_roots_ = {alpha, beta};
        auto lin = [&](int ca, int cb) {
            return rv_add(rv_scale(Rat(ca), alpha), rv_scale(Rat(cb), beta));
        };
        add(lin(1, 0));
        add(lin(0, 1));
        add(lin(1, 1));
        add(lin(2, 1));
        add(lin(3, 1));
        add(lin(3, 2));
        d.gram_.assign(3, RatVec(3, Rat(0)));
        for (int i = 0; i < 3; ++i) d.gram_[i][i] = Rat(1);
    } else {
        throw std::invalid_argument("unsupported split type: " + family);
    }
    d.ratios_.assign(d.simple_roots_.size(), Rat(1));
    d.split_ = true;
    d.finalize();
    return d;
}

RootDatum root_datum_from_json(const nlohmann::json& j) {
    auto rat = [](const nlohmann::json& x) {
        if (x.is_number_integer()) return Rat(x.get<std::int64_t>());
        return Rat::parse(x.get<std::string>());
    };
    auto vec = [&](const nlohmann::json& x) {
        RatVec v;
        for (const auto& e : x) v.push_back(rat(e));
        return v;
    };
    RootDatum d;
    d.name_ = j.value("name", std::string("relative"));
    d.split_ = j.value("split", false);
    for (const auto& a : j.at("simple_roots")) d.simple_roots_.push_back(vec(a));
    for (const auto& p : j.at("positive_roots"))
        d.positive_roots_.push_back({vec(p.at("v")), p.value("mult", 1), {}});
    for (const auto& row : j.at("gram")) d.gram_.push_back(vec(row));
    for (const auto& q : j.at("ratios")) d.ratios_.push_back(rat(q));
    if (j.contains("weights"))
        for (const auto& w : j.at("weights")) d.weights_.push_back(vec(w));
    d.finalize();
    return d;
}

std::vector<CharVec> fundamental_weights(const RootDatum& datum) {
    std::vector<CharVec> out;
    for (int a = 0; a < datum.rank(); ++a) {
        CharVec c;
        c.coords = datum.weights()[a];
        RatVec fw(datum.rank(), Rat(0));
        fw[a] = Rat(1);
        c.fw_coords = fw;
        out.push_back(std::move(c));
    }
    return out;
}

CharVec rho_prime(const RootDatum& datum, const ParabolicIndex& F) {
    const int r = datum.rank();
    for (int a : F.subset)
        if (a < 0 || a >= r) throw std::invalid_argument("parabolic index out of range");

    RatVec sum(datum.ambient_dim(), Rat(0));
    for (const auto& phi : datum.positive_roots()) {
        bool in_span_F = true;
        for (int i = 0; i < r; ++i)
            if (!phi.simple_coords[i].is_zero() && !F.contains(i)) { in_span_F = false; break; }
        if (!in_span_F) sum = rv_add(sum, rv_scale(Rat(phi.mult), phi.v));
    }

    // expand in the weight basis: m_a = (rho', alpha_coroot) / ratio_a
    RatVec m(r);
    RatVec recon(datum.ambient_dim(), Rat(0));
    for (int a = 0; a < r; ++a) {
        m[a] = datum.inner(sum, datum.coroot(datum.simple_roots()[a])) / datum.duality_ratios()[a];
        recon = rv_add(recon, rv_scale(m[a], datum.weights()[a]));
    }
    if (recon != sum)
        throw ValidationError("rho'_F is not in the span of the fundamental weights");
    for (int a = 0; a < r; ++a) {
        if (F.contains(a)) {
            if (!m[a].is_zero())
                throw ValidationError("rho'_F has a nonzero coefficient on F");
        } else if (!m[a].is_integer() || !(m[a] > Rat(0))) {
            throw ValidationError("rho'_F coefficient on " + std::to_string(a) +
                                  " is not a positive integer: " + m[a].str());
        }
    }
    return CharVec{sum, m};
}

Rat pair(const RootDatum& datum, const RatVec& chi, const RatVec& theta) {
    return datum.inner(chi, theta);
}

Rat pair(const RootDatum& datum, const CharVec& chi, const CochVec& theta) {
    return datum.inner(chi.coords, theta.coords);
}

RatVec reflect(const RootDatum& datum, const RatVec& w, int beta_index) {
    if (beta_index < 0 || beta_index >= datum.rank())
        throw std::invalid_argument("reflect: not a simple root index");
    const RatVec& beta = datum.simple_roots()[beta_index];
    Rat c = datum.inner(w, datum.coroot(beta));
    return rv_sub(w, rv_scale(c, beta));
}

namespace {

RatMat inverse_sl(const RatMat& g) {
    const size_t n = g.size();
    if (n == 2)
        return {{g[1][1], -g[0][1]}, {-g[1][0], g[0][0]}};
    // adjugate, det = 1
    RatMat inv(3, RatVec(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
            int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
            inv[j][i] = g[r0][c0] * g[r1][c1] - g[r0][c1] * g[r1][c0];
        }
    return inv;
}

RatMat mat_mul(const RatMat& a, const RatMat& b) {
    const size_t n = a.size();
    RatMat c(n, RatVec(n, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

Rat mat_dot(const RatMat& a, const RatMat& b) {
    Rat s;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) s += a[i][j] * b[i][j];
    return s;
}

}  // namespace

double d_alpha(const RatMat& g, int alpha_index) {
    const int n = int(g.size());
    if (n != 2 && n != 3) throw std::invalid_argument("d_alpha: only SL2/SL3 supported");
    for (const auto& row : g)
        if (int(row.size()) != n) throw std::invalid_argument("d_alpha: not square");
    if (alpha_index < 0 || alpha_index >= n - 1)
        throw std::invalid_argument("d_alpha: simple root index out of range");
    {
        RatMat m = g;
        if (det_rat(m) != Rat(1)) throw std::invalid_argument("d_alpha: det(g) != 1");
    }

    // u_alpha = Lie R_u(P_{Delta \ {alpha}}): for the block split after row
    // alpha_index+1, the strictly upper off-block entries E_{ij}
    std::vector<std::pair<int, int>> entries;
    for (int i = 0; i <= alpha_index; ++i)
        for (int j = alpha_index + 1; j < n; ++j) entries.emplace_back(i, j);

    RatMat ginv = inverse_sl(g);
    std::vector<RatMat> w;
    for (auto [i, j] : entries) {
        RatMat E(n, RatVec(n, Rat(0)));
        E[i][j] = Rat(1);
        w.push_back(mat_mul(mat_mul(g, E), ginv));
    }
    // || w_1 ^ ... ^ w_l ||^2 = det Gram(w_i, w_j), Frobenius inner product
    const size_t l = w.size();
    RatMat G(l, RatVec(l));
    for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < l; ++j) G[i][j] = mat_dot(w[i], w[j]);
    return std::sqrt(det_rat(G).to_double());
}

std::int64_t k_alpha(const RootDatum& datum, int alpha_index) {
    ParabolicIndex F;
    for (int i = 0; i < datum.rank(); ++i)
        if (i != alpha_index) F.subset.insert(i);
    CharVec rho = rho_prime(datum, F);
    Rat k = (*rho.fw_coords)[alpha_index];
    if (!k.is_integer() || !(k > Rat(0)))
        throw ValidationError("k_alpha is not a positive integer");
    return k.num();
}

}  // namespace horocone::rootsys
