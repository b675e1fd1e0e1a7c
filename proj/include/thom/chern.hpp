#pragma once

#include <optional>
#include <utility>
#include <string>
#include <vector>

#include "thom/error.hpp"
#include "thom/polynomial.hpp"

namespace thom {

// Total Chern class truncated at degree D: 1 + g_1 + ... + g_D with g_i homogeneous of degree i.
// The rank, when known, is used only by twist_by_line.
class ChernSeries {
public:
    explicit ChernSeries(int truncation, std::optional<int> rank = std::nullopt)
        : truncation_(truncation), rank_(rank), components_(static_cast<std::size_t>(truncation) + 1) {
        if (truncation < 0) throw Error(errc::invalid_argument, "truncation must be nonnegative");
        if (rank && *rank < 0) throw Error(errc::invalid_argument, "rank must be nonnegative");
        components_[0] = GradedPolynomial(1);
    }

    // Builds a series from explicit components; component 0 must be exactly 1 and
    // component i homogeneous of degree i. Components past the list are zero.
    static ChernSeries from_components(int truncation, const std::vector<GradedPolynomial>& components,
                                       std::optional<int> rank = std::nullopt) {
        ChernSeries s(truncation, rank);
        if (components.empty() || components[0] != GradedPolynomial(1))
            throw Error(errc::invariant, "component 0 of a Chern series must be 1");
        if (static_cast<int>(components.size()) > truncation + 1)
            for (std::size_t i = static_cast<std::size_t>(truncation) + 1; i < components.size(); ++i)
                if (!components[i].is_zero())
                    throw Error(errc::truncation_mismatch, "component " + std::to_string(i) +
                                                               " lies beyond the truncation " +
                                                               std::to_string(truncation));
        for (int i = 1; i <= truncation && i < static_cast<int>(components.size()); ++i) s.set(i, components[i]);
        return s;
    }

    // 1 + b_1 + ... + b_top with b_i = family.i; top defaults to the truncation.
    static ChernSeries symbolic(const std::string& family, int truncation, std::optional<int> rank = std::nullopt) {
        ChernSeries s(truncation, rank);
        const int top = rank ? std::min(*rank, truncation) : truncation;
        for (int i = 1; i <= top; ++i) s.components_[i] = GradedPolynomial(var(family, i));
        return s;
    }

    int truncation() const noexcept { return truncation_; }
    std::optional<int> rank() const noexcept { return rank_; }
    const std::vector<GradedPolynomial>& components() const& noexcept { return components_; }
    std::vector<GradedPolynomial> components() && noexcept { return std::move(components_); }

    const GradedPolynomial& operator[](int i) const { return components_.at(static_cast<std::size_t>(i)); }

    void set(int i, GradedPolynomial g) {
        if (i < 1 || i > truncation_) throw Error(errc::invalid_argument, "component index out of range");
        if (!g.is_homogeneous(i))
            throw Error(errc::invariant, "component " + std::to_string(i) + " is not homogeneous of degree " +
                                             std::to_string(i));
        components_[static_cast<std::size_t>(i)] = std::move(g);
    }

    bool is_one() const {
        for (int i = 1; i <= truncation_; ++i)
            if (!components_[static_cast<std::size_t>(i)].is_zero()) return false;
        return true;
    }

    // Same components, new rank metadata.
    ChernSeries with_rank(std::optional<int> rank) const {
        ChernSeries s = *this;
        s.rank_ = rank;
        return s;
    }

    // Components equal through the truncation; rank metadata is ignored.
    bool operator==(const ChernSeries& other) const {
        return truncation_ == other.truncation_ && components_ == other.components_;
    }

private:
    int truncation_;
    std::optional<int> rank_;
    std::vector<GradedPolynomial> components_;
};

inline ChernSeries series_multiply(const ChernSeries& a, const ChernSeries& b) {
    if (a.truncation() != b.truncation())
        throw Error(errc::truncation_mismatch, "series truncations differ: " + std::to_string(a.truncation()) +
                                                   " vs " + std::to_string(b.truncation()));
    const int d = a.truncation();
    ChernSeries out(d);
    for (int i = 1; i <= d; ++i) {
        GradedPolynomial acc;
        for (int j = 0; j <= i; ++j)
            if (!a[j].is_zero() && !b[i - j].is_zero()) acc += a[j] * b[i - j];
        out.set(i, std::move(acc));
    }
    return out;
}

// b_i = −Σ_{j=1..i} a_j b_{i−j}.
inline ChernSeries series_invert(const ChernSeries& a) {
    const int d = a.truncation();
    ChernSeries out(d);
    std::vector<GradedPolynomial> b(static_cast<std::size_t>(d) + 1);
    b[0] = GradedPolynomial(1);
    for (int i = 1; i <= d; ++i) {
        GradedPolynomial acc;
        for (int j = 1; j <= i; ++j)
            if (!a[j].is_zero() && !b[static_cast<std::size_t>(i - j)].is_zero())
                acc -= a[j] * b[static_cast<std::size_t>(i - j)];
        b[static_cast<std::size_t>(i)] = acc;
        out.set(i, std::move(acc));
    }
    return out;
}

// c̃ = c' / c, the relative classes.
inline ChernSeries relative_chern(const ChernSeries& cprime, const ChernSeries& c) {
    if (cprime.truncation() != c.truncation())
        throw Error(errc::truncation_mismatch, "series truncations differ");
    return series_multiply(cprime, series_invert(c));
}

// Kills c_i for i > n and c'_j for j > k.
inline GradedPolynomial stabilize_substitute(const GradedPolynomial& p, int n, int k) {
    return substitute(p, [n, k](const Variable& v) -> std::optional<GradedPolynomial> {
        if ((v.family == fam::c && v.index > n) || (v.family == fam::cprime && v.index > k))
            return GradedPolynomial();
        return std::nullopt;
    });
}

// Replaces family.i by component i of the paired series, for each (family, series) pair.
// Index 0 never occurs; indices past a series' truncation are an error.
inline GradedPolynomial substitute_series(const GradedPolynomial& p,
                                          const std::vector<std::pair<std::string, const ChernSeries*>>& images) {
    return substitute(p, [&images](const Variable& v) -> std::optional<GradedPolynomial> {
        for (const auto& [family, series] : images) {
            if (v.family != family) continue;
            if (v.index > series->truncation())
                throw Error(errc::degree_overflow, v.key() + " lies beyond the series truncation " +
                                                       std::to_string(series->truncation()));
            return (*series)[v.index];
        }
        return std::nullopt;
    });
}

namespace detail {

inline Rational binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

}  // namespace detail

// c(E ⊗ L) for E of rank r and c_1(L) = α·m:
//   c_j(E⊗L) = Σ_{i=0..j} C(r−i, j−i) e_i (α m)^{j−i}.
inline ChernSeries twist_by_line(const ChernSeries& e, const Variable& m = var(fam::m),
                                 const Variable& alpha = var(fam::alpha)) {
    if (!e.rank()) throw Error(errc::invalid_argument, "twist_by_line needs a series with known rank");
    const int r = *e.rank();
    const int d = e.truncation();
    if (r > d)
        throw Error(errc::truncation_mismatch,
                    "rank " + std::to_string(r) + " exceeds truncation " + std::to_string(d));
    for (int i = r + 1; i <= d; ++i)
        if (!e[i].is_zero())
            throw Error(errc::invariant, "component " + std::to_string(i) + " is nonzero above the rank");
    const GradedPolynomial am = GradedPolynomial(alpha) * GradedPolynomial(m);
    ChernSeries out(d, r);
    for (int j = 1; j <= d; ++j) {
        GradedPolynomial acc;
        for (int i = 0; i <= j; ++i) {
            Rational b = detail::binomial(r - i, j - i);
            if (b == 0 || e[i].is_zero()) continue;
            acc += (e[i] * pow(am, j - i)).scale(b);
        }
        out.set(j, std::move(acc));
    }
    return out;
}

// P(α) := (twist − e) / α, componentwise. Exact because every α-dependent summand
// carries α; component 0 of P is zero. Throws if an α-free summand survives.
inline std::vector<GradedPolynomial> twist_remainder(const ChernSeries& twisted, const ChernSeries& e,
                                                     const Variable& alpha = var(fam::alpha)) {
    if (twisted.truncation() != e.truncation()) throw Error(errc::truncation_mismatch, "series truncations differ");
    std::vector<GradedPolynomial> out(static_cast<std::size_t>(e.truncation()) + 1);
    for (int i = 1; i <= e.truncation(); ++i) {
        GradedPolynomial diff = twisted[i] - e[i];
        GradedPolynomial quotient;
        for (const auto& [mono, coeff] : diff.terms()) {
            if (mono.exponent(alpha) == 0) throw Error(errc::invariant, "twist remainder has an alpha-free summand");
            std::vector<Monomial::Factor> f = mono.factors();
            for (auto& [v, ex] : f)
                if (v == alpha) ex -= 1;
            quotient.add_term(Monomial(std::move(f)), coeff);
        }
        out[static_cast<std::size_t>(i)] = std::move(quotient);
    }
    return out;
}

}  // namespace thom
