#pragma once

#include <future>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "thom/chern.hpp"
#include "thom/error.hpp"
#include "thom/polynomial.hpp"
#include "thom/symfunc.hpp"

namespace thom {

// A Thom polynomial in ℂ[c] ⊗ ℂ[c'] written for maps from n-space to k-space.
struct CatalogueEntry {
    std::string name;
    int l = 0;  // k − n
    int n = 0;
    int k = 0;
    int codim = 0;
    GradedPolynomial poly;
    std::string source;

    bool operator==(const CatalogueEntry&) const = default;
};

inline const std::string sigma1_name = "Sigma1";

// Checks l = k − n, homogeneity of degree codim, and that only c_1..c_n, c'_1..c'_k occur.
inline void validate(const CatalogueEntry& e) {
    auto fail = [&](const std::string& what) { throw Error(errc::invariant, "entry '" + e.name + "': " + what); };
    if (e.n < 0 || e.k < e.n) fail("needs 0 <= n <= k");
    if (e.l != e.k - e.n) fail("l = " + std::to_string(e.l) + " but k - n = " + std::to_string(e.k - e.n));
    if (e.codim < 0) fail("negative codimension");
    if (!e.poly.is_homogeneous(e.codim))
        fail("polynomial is not homogeneous of degree codim = " + std::to_string(e.codim));
    for (const auto& [mono, coeff] : e.poly.terms())
        for (const auto& [v, ex] : mono.factors()) {
            if (v.family == fam::c && v.index <= e.n) continue;
            if (v.family == fam::cprime && v.index <= e.k) continue;
            fail("variable " + v.key() + " is not a class of the (n,k) = (" + std::to_string(e.n) + "," +
                 std::to_string(e.k) + ") size");
        }
}

// Σ¹ ⊂ J_1^{n,k} = Hom(A, B), where c = c(A) and c' = c(B) and the weights of Hom(A, B)
// are b_j − a_i. The pinned sign makes the (1,1) polynomial c'_1 − c_1.
//
// The locus is resolved over P(A): {(ℓ, φ) : φ(ℓ) = 0} is the zero set of the section φ ↦ φ|_ℓ of
// Hom(ℓ, B), whose Euler class is ∏_j (b_j − x) with x = c_1(ℓ). Pushing forward along
// P(A) → pt uses π_*(x^{n−1+i}) = (−1)^{n−1} h_i(a). The coefficients of ∏(b_j − x) are
// re-expressed in c' by symmetric reduction over k formal roots; for n = 1 the pushforward is
// the substitution x ↦ c_1 and the result is the plain Euler class.
inline CatalogueEntry sigma1_oracle(int n, int k, int truncation) {
    if (n < 1 || k < n) throw Error(errc::invalid_argument, "sigma1 oracle needs 1 <= n <= k");
    const int codim = k - n + 1;
    if (truncation < codim)
        throw Error(errc::degree_overflow, "truncation " + std::to_string(truncation) + " is below codim " +
                                               std::to_string(codim));

    // coeffs[m] = coefficient of x^m in ∏_j (y_j − x), a polynomial in the roots y_1..y_k.
    std::vector<MonomialPolynomial> coeffs{MonomialPolynomial::constant(k, 1)};
    for (int j = 0; j < k; ++j) {
        MonomialPolynomial yj(k);
        MonomialPolynomial::Exponents e(static_cast<std::size_t>(k), 0);
        e[static_cast<std::size_t>(j)] = 1;
        yj.add(e, 1);
        std::vector<MonomialPolynomial> next(coeffs.size() + 1, MonomialPolynomial(k));
        for (std::size_t m = 0; m < coeffs.size(); ++m) {
            next[m] += yj * coeffs[m];
            next[m + 1] -= coeffs[m];
        }
        coeffs = std::move(next);
    }

    GradedPolynomial poly;
    for (int m = n - 1; m <= k; ++m) {
        const GradedPolynomial in_cprime =
            to_elementary(expand_monomial_in_schur(coeffs[static_cast<std::size_t>(m)]), fam::cprime);
        // h_i(a) = s_(i) in the elementary letter c, with c_j = 0 for j > n.
        const int i = m - n + 1;
        GradedPolynomial h = i == 0 ? GradedPolynomial(1) : schur_in_elementary(Partition{i}, fam::c);
        h = stabilize_substitute(h, n, k);
        poly += in_cprime * h;
    }
    if ((n - 1) % 2 == 1) poly.scale(-1);

    CatalogueEntry entry{sigma1_name, k - n, n, k, codim, std::move(poly), "Euler-class oracle"};
    validate(entry);
    return entry;
}

inline CatalogueEntry sigma1_oracle(int k, int truncation) { return sigma1_oracle(1, k, truncation); }

struct DamonResult {
    bool expressible = false;
    SchurExpansion relative_form;  // meaningful only when expressible
    GradedPolynomial candidate;    // q(c̃): the entry with c = 1, read in relative classes
    GradedPolynomial universal;    // q(c̃(c', c)) with unrestricted symbolic c, c'
};

namespace detail {

inline GradedPolynomial relative_class_expansion(const GradedPolynomial& in_ctilde, int truncation) {
    const ChernSeries rel =
        relative_chern(ChernSeries::symbolic(fam::cprime, truncation), ChernSeries::symbolic(fam::c, truncation));
    return substitute_series(in_ctilde, {{fam::ctilde, &rel}});
}

}  // namespace detail

// Sets c = 1, reads the remainder q in the relative classes, re-expands q(c̃(c', c)) with symbolic
// c and c', restricts to the entry's size and compares.
inline DamonResult check_damon(const CatalogueEntry& entry, int truncation) {
    const int deg = std::max(entry.poly.degree(), 0);
    if (truncation < deg)
        throw Error(errc::degree_overflow, "truncation " + std::to_string(truncation) + " is below degree " +
                                               std::to_string(deg));
    DamonResult out;
    const GradedPolynomial q = substitute(entry.poly, [](const Variable& v) -> std::optional<GradedPolynomial> {
        if (v.family == fam::c) return GradedPolynomial();
        return std::nullopt;
    });
    for (const auto& f : q.families())
        if (f != fam::cprime) throw Error(errc::invariant, "unexpected family '" + f + "' in a Thom polynomial");
    out.candidate = rename_families(q, {{fam::cprime, fam::ctilde}});
    out.universal = detail::relative_class_expansion(out.candidate, truncation);
    out.expressible = stabilize_substitute(out.universal, entry.n, entry.k) == entry.poly;
    if (out.expressible) out.relative_form = expand_in_schur(out.candidate, fam::ctilde);
    return out;
}

// small at (n, k) against large at (n+1, k+1): equal after killing c_{n+1} and c'_{k+1}.
inline bool check_stabilization(const CatalogueEntry& small, const CatalogueEntry& large) {
    if (large.n != small.n + 1 || large.k != small.k + 1)
        throw Error(errc::invalid_argument, "stabilization compares sizes (n,k) and (n+1,k+1)");
    return stabilize_substitute(large.poly, small.n, small.k) == small.poly;
}

// Finds the second size in the catalogue (one size up, else one size down), falling back to the
// Σ¹ oracle for Sigma1 entries. Constant entries are stable without a companion.
inline bool check_stabilization(const CatalogueEntry& entry, const std::vector<CatalogueEntry>& catalogue) {
    if (entry.poly.degree() <= 0) return true;
    auto find = [&](int n, int k) -> const CatalogueEntry* {
        for (const auto& c : catalogue)
            if (c.name == entry.name && c.l == entry.l && c.n == n && c.k == k) return &c;
        return nullptr;
    };
    if (const auto* up = find(entry.n + 1, entry.k + 1)) return check_stabilization(entry, *up);
    if (const auto* down = find(entry.n - 1, entry.k - 1)) return check_stabilization(*down, entry);
    if (entry.name == sigma1_name)
        return check_stabilization(entry, sigma1_oracle(entry.n + 1, entry.k + 1, entry.codim));
    throw Error(errc::missing_companion, "no second-size polynomial for '" + entry.name + "' at (n,k) = (" +
                                             std::to_string(entry.n) + "," + std::to_string(entry.k) + ")");
}

inline bool check_positive(const SchurExpansion& expansion) {
    for (const auto& [lambda, coeff] : expansion.coeffs())
        if (coeff < 0) return false;
    return true;
}

// Whether the entry already is the universal polynomial: no variable of degree <= codim was killed.
inline bool is_universal_size(const CatalogueEntry& entry) { return entry.n >= entry.codim && entry.k >= entry.codim; }

// The universal polynomial an entry restricts from: the entry itself at universal size, otherwise
// the relative-class lift. nullopt when neither exists.
inline std::optional<GradedPolynomial> universal_form(const CatalogueEntry& entry, int truncation) {
    if (is_universal_size(entry)) return entry.poly;
    auto damon = check_damon(entry, truncation);
    if (!damon.expressible) return std::nullopt;
    return damon.universal;
}

// UTp(c·e, c'·e) == UTp(c, c') with e's components left symbolic.
inline bool substitution_invariance(const CatalogueEntry& entry, const ChernSeries& e, int truncation) {
    if (e.truncation() != truncation) throw Error(errc::truncation_mismatch, "unit series truncation differs");
    const auto universal = universal_form(entry, truncation);
    if (!universal) return false;
    if (universal->degree() > truncation)
        throw Error(errc::degree_overflow, "truncation is below the polynomial degree");
    const ChernSeries ce = series_multiply(ChernSeries::symbolic(fam::c, truncation), e);
    const ChernSeries cpe = series_multiply(ChernSeries::symbolic(fam::cprime, truncation), e);
    return substitute_series(*universal, {{fam::c, &ce}, {fam::cprime, &cpe}}) == *universal;
}

struct TwistIdentityReport {
    bool alpha_free_part_zero = false;  // value at α = 0 of UTp(c·T, c'·T) − UTp(c, c')
    bool divisible_by_alpha = false;    // the difference equals α · (difference / α)
    bool difference_zero = false;       // every α-coefficient vanishes
    int alpha_degree = 0;
};

// T = c(E ⊗ L^α) for a symbolic rank-r series E; compares UTp(c·T, c'·T) with UTp(c, c')
// as a polynomial identity in α.
inline TwistIdentityReport twist_identity(const CatalogueEntry& entry, int rank, int truncation) {
    const auto universal = universal_form(entry, truncation);
    if (!universal) throw Error(errc::invariant, "'" + entry.name + "' has no universal form");
    const ChernSeries twist = twist_by_line(ChernSeries::symbolic(fam::q, truncation, rank));
    const ChernSeries ct = series_multiply(ChernSeries::symbolic(fam::c, truncation), twist);
    const ChernSeries cpt = series_multiply(ChernSeries::symbolic(fam::cprime, truncation), twist);
    const GradedPolynomial diff = substitute_series(*universal, {{fam::c, &ct}, {fam::cprime, &cpt}}) - *universal;

    const Variable alpha = var(fam::alpha);
    TwistIdentityReport out;
    out.alpha_degree = degree_in(diff, alpha);
    out.alpha_free_part_zero =
        substitute(diff, [&](const Variable& v) -> std::optional<GradedPolynomial> {
            if (v == alpha) return GradedPolynomial();
            return std::nullopt;
        }).is_zero();
    GradedPolynomial quotient;
    bool exact = true;
    for (const auto& [mono, coeff] : diff.terms()) {
        if (mono.exponent(alpha) == 0) {
            exact = false;
            break;
        }
        auto f = mono.factors();
        for (auto& [v, ex] : f)
            if (v == alpha) --ex;
        quotient.add_term(Monomial(std::move(f)), coeff);
    }
    out.divisible_by_alpha = exact && GradedPolynomial(alpha) * quotient == diff;
    out.difference_zero = true;
    for (int a = 0; a <= out.alpha_degree; ++a)
        if (!coefficient_of_power(diff, alpha, a).is_zero()) out.difference_zero = false;
    return out;
}

// Polynomial over the two-element field: the set of monomials with coefficient 1.
class Gf2Polynomial {
public:
    Gf2Polynomial() = default;

    const std::set<Monomial>& terms() const& noexcept { return terms_; }
    std::set<Monomial> terms() && noexcept { return std::move(terms_); }
    bool is_zero() const noexcept { return terms_.empty(); }

    void toggle(const Monomial& m) {
        if (!terms_.erase(m)) terms_.insert(m);
    }

    friend Gf2Polynomial operator+(Gf2Polynomial a, const Gf2Polynomial& b) {
        for (const auto& m : b.terms_) a.toggle(m);
        return a;
    }
    friend Gf2Polynomial operator*(const Gf2Polynomial& a, const Gf2Polynomial& b) {
        Gf2Polynomial out;
        for (const auto& ma : a.terms_)
            for (const auto& mb : b.terms_) out.toggle(ma * mb);
        return out;
    }

    GradedPolynomial lift() const {
        GradedPolynomial out;
        for (const auto& m : terms_) out.add_term(m, 1);
        return out;
    }

    bool operator==(const Gf2Polynomial&) const = default;

private:
    std::set<Monomial> terms_;
};

// Stiefel–Whitney reduction: integer coefficients mod 2, c → w, c' → w', c̃ → w̃.
inline Gf2Polynomial reduce_mod2(const GradedPolynomial& p) {
    const GradedPolynomial renamed =
        rename_families(p, {{fam::c, fam::w}, {fam::cprime, fam::wprime}, {fam::ctilde, fam::wtilde}});
    Gf2Polynomial out;
    for (const auto& [mono, coeff] : renamed.terms()) {
        if (!is_integer(coeff))
            throw Error(errc::non_integral, "coefficient " + to_string(coeff) + " is not an integer");
        if (mpz_odd_p(coeff.get_num_mpz_t())) out.toggle(mono);
    }
    return out;
}

struct VerificationReport {
    std::string name;
    bool damon_ok = false;
    std::optional<SchurExpansion> relative_form;  // present iff damon_ok
    bool positive_ok = false;
    bool stabilization_ok = false;
    std::vector<std::string> notes;

    bool passed() const { return damon_ok && positive_ok && stabilization_ok; }
};

inline VerificationReport verify_entry(const CatalogueEntry& entry, const std::vector<CatalogueEntry>& catalogue,
                                       int truncation) {
    VerificationReport r;
    r.name = entry.name;
    const std::string size = "(n,k)=(" + std::to_string(entry.n) + "," + std::to_string(entry.k) + ")";
    r.notes.push_back("size " + size);
    try {
        auto damon = check_damon(entry, truncation);
        r.damon_ok = damon.expressible;
        if (damon.expressible) {
            r.relative_form = damon.relative_form;
            r.positive_ok = check_positive(damon.relative_form);
            if (!r.positive_ok) r.notes.push_back("relative form has a negative Schur coefficient");
        } else {
            r.notes.push_back("not expressible in the relative classes");
        }
    } catch (const Error& e) {
        r.notes.push_back("damon check failed: " + std::string(e.what()));
    }
    try {
        r.stabilization_ok = check_stabilization(entry, catalogue);
        if (!r.stabilization_ok) r.notes.push_back("second-size polynomial does not restrict to this one");
    } catch (const Error& e) {
        r.notes.push_back("stabilization unchecked: " + std::string(e.what()));
    }
    return r;
}

// Entries are verified independently; reports come back in catalogue order.
inline std::vector<VerificationReport> verify_catalogue(const std::vector<CatalogueEntry>& catalogue,
                                                        std::optional<int> truncation = std::nullopt) {
    std::vector<std::future<VerificationReport>> jobs;
    jobs.reserve(catalogue.size());
    for (const auto& entry : catalogue) {
        const int d = truncation.value_or(std::max(2 * entry.poly.degree(), 1));
        jobs.push_back(std::async(std::launch::async, [&catalogue, &entry, d] {
            return verify_entry(entry, catalogue, d);
        }));
    }
    std::vector<VerificationReport> out;
    out.reserve(jobs.size());
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

}  // namespace thom
