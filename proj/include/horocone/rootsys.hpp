#pragma once

// Exact root-datum algebra: simple roots, coroots, reflections, relative
// fundamental weights, the parabolic determinant characters rho'_F, the
// char/cochar pairing, and the d_alpha functions on explicit SL_n matrices.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "horocone/rational.hpp"

#include "json.hpp"

namespace horocone::rootsys {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Character: a vector in E = X*(S) tensor R, with an optional expansion in
// the fundamental-weight basis.
struct CharVec {
    RatVec coords;
    std::optional<RatVec> fw_coords;  // indexed by simple root
};

// Cocharacter, identified with a vector in E via the inner product.
struct CochVec {
    RatVec coords;
};

struct PositiveRoot {
    RatVec v;
    int mult = 1;
    std::vector<Rat> simple_coords;  // v in the simple-root basis
};

struct ParabolicIndex {
    std::set<int> subset;  // indices into simple_roots

    bool contains(int a) const { return subset.count(a) != 0; }
};

class RootDatum {
public:
    int rank() const { return int(simple_roots_.size()); }
    int ambient_dim() const { return int(simple_roots_.empty() ? 0 : simple_roots_[0].size()); }
    const std::vector<RatVec>& simple_roots() const { return simple_roots_; }
    const std::vector<PositiveRoot>& positive_roots() const { return positive_roots_; }
    const std::vector<RatVec>& weights() const { return weights_; }
    const std::vector<Rat>& duality_ratios() const { return ratios_; }
    bool is_split() const { return split_; }
    const std::string& name() const { return name_; }

    // Weyl-invariant inner product (unscaled form; the metric scale below
    // multiplies norms only, never pairings or coroots).
    Rat inner(const RatVec& x, const RatVec& y) const;
    RatVec coroot(const RatVec& root) const;  // 2a/(a,a)

    double metric_scale() const { return metric_scale_; }
    void set_metric_scale(double s);
    double norm(const RatVec& x) const;  // sqrt(scale * (x,x))

    friend RootDatum build_root_datum(const std::string& type, int rank_arg);
    friend RootDatum root_datum_from_json(const nlohmann::json& j);

private:
    std::vector<RatVec> simple_roots_;
    std::vector<PositiveRoot> positive_roots_;
    RatMat gram_;
    std::vector<RatVec> weights_;
    std::vector<Rat> ratios_;
    bool split_ = true;
    double metric_scale_ = 1.0;
    std::string name_;

    void finalize();  // compute simple_coords, weights; check invariants
};

// Split constructions: "A1".."A4", "B2".., "C3".., "D4".., "G2"; rank
// encoded in the name.
RootDatum build_root_datum(const std::string& type);
RootDatum build_root_datum(const std::string& type, int rank_arg);

// Explicit relative data:
// {"simple_roots": [[...]], "positive_roots": [{"v": [...], "mult": k}],
//  "gram": [[...]], "ratios": [...]}  with rationals as "p/q" strings.
RootDatum root_datum_from_json(const nlohmann::json& j);

// Exact solutions of (lambda_a, b_coroot) = ratio_a * delta_ab.
std::vector<CharVec> fundamental_weights(const RootDatum& datum);

// Sum of positive roots (with multiplicity) outside the span of F, expanded
// in the fundamental-weight basis. Coefficients are checked to be positive
// integers on the complement of F and zero on F.
CharVec rho_prime(const RootDatum& datum, const ParabolicIndex& F);

// <chi, theta>, bilinear, exact.
Rat pair(const RootDatum& datum, const CharVec& chi, const CochVec& theta);
Rat pair(const RootDatum& datum, const RatVec& chi, const RatVec& theta);

// Simple reflection sigma_beta applied to w.
RatVec reflect(const RootDatum& datum, const RatVec& w, int beta_index);

// d_alpha(g) = || wedge^l Ad(g) v_alpha || for g in SL_n(Q), n in {2,3}.
// alpha_index selects the simple root (0-based, type A_{n-1}).
double d_alpha(const RatMat& g, int alpha_index);

// k_alpha from rho'_{Delta \ {alpha}} = k_alpha * lambda_alpha; computed,
// not hard-coded (the exponent of d_alpha along the torus).
std::int64_t k_alpha(const RootDatum& datum, int alpha_index);

}  // namespace horocone::rootsys
