#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "thom/error.hpp"
#include "thom/partition.hpp"
#include "thom/polynomial.hpp"
#include "thom/rational.hpp"

namespace thom {

// Coefficients on the Schur basis, keyed by partition. No zero is ever stored.
class SchurExpansion {
public:
    using Coeffs = std::map<Partition, Rational>;

    SchurExpansion() = default;
    SchurExpansion(std::initializer_list<std::pair<const Partition, Rational>> init) {
        for (const auto& [p, c] : init) add(p, c);
    }

    const Coeffs& coeffs() const& noexcept { return coeffs_; }
    Coeffs coeffs() && noexcept { return std::move(coeffs_); }
    bool empty() const noexcept { return coeffs_.empty(); }
    std::size_t size() const noexcept { return coeffs_.size(); }

    Rational coefficient(const Partition& p) const {
        auto it = coeffs_.find(p);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    void add(const Partition& p, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = coeffs_.try_emplace(p, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    bool operator==(const SchurExpansion&) const = default;

private:
    Coeffs coeffs_;
};

// Polynomial in x_1..x_n stored by dense exponent vectors; the realization target.
class MonomialPolynomial {
public:
    using Exponents = std::vector<int>;

    explicit MonomialPolynomial(int numvars = 0) : numvars_(numvars) {}

    static MonomialPolynomial constant(int numvars, const Rational& c) {
        MonomialPolynomial out(numvars);
        out.add(Exponents(static_cast<std::size_t>(numvars), 0), c);
        return out;
    }

    // e_i(x_1..x_n); zero for i > n.
    static MonomialPolynomial elementary(int numvars, int i) {
        MonomialPolynomial out(numvars);
        if (i < 0 || i > numvars) return out;
        Exponents e(static_cast<std::size_t>(numvars), 0);
        std::fill(e.end() - i, e.end(), 1);
        do {
            out.add(e, 1);
        } while (std::next_permutation(e.begin(), e.end()));
        return out;
    }

    int numvars() const noexcept { return numvars_; }
    const std::map<Exponents, Rational>& terms() const& noexcept { return terms_; }
    std::map<Exponents, Rational> terms() && noexcept { return std::move(terms_); }
    bool is_zero() const noexcept { return terms_.empty(); }

    Rational coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add(const Exponents& e, const Rational& c) {
        if (c == 0) return;
        if (static_cast<int>(e.size()) != numvars_)
            throw Error(errc::dimension_mismatch, "exponent vector has the wrong length");
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    MonomialPolynomial& operator+=(const MonomialPolynomial& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add(e, c);
        return *this;
    }
    MonomialPolynomial& operator-=(const MonomialPolynomial& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add(e, -c);
        return *this;
    }
    MonomialPolynomial& scale(const Rational& s) {
        if (s == 0) terms_.clear();
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend MonomialPolynomial operator+(MonomialPolynomial a, const MonomialPolynomial& b) { return a += b; }
    friend MonomialPolynomial operator-(MonomialPolynomial a, const MonomialPolynomial& b) { return a -= b; }

    friend MonomialPolynomial operator*(const MonomialPolynomial& a, const MonomialPolynomial& b) {
        a.check(b);
        MonomialPolynomial out(a.numvars_);
        Exponents e(static_cast<std::size_t>(a.numvars_));
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                out.add(e, ca * cb);
            }
        return out;
    }

    bool operator==(const MonomialPolynomial&) const = default;

private:
    void check(const MonomialPolynomial& o) const {
        if (o.numvars_ != numvars_) throw Error(errc::dimension_mismatch, "variable counts differ");
    }

    int numvars_;
    std::map<Exponents, Rational> terms_;
};

namespace detail {

// Determinant of a square matrix of polynomials, expanding along rows with
// memoized minors over column subsets.
inline GradedPolynomial polynomial_determinant(const std::vector<std::vector<GradedPolynomial>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return GradedPolynomial(1);
    // minors[mask] = det of rows (n - popcount(mask) .. n-1) restricted to columns in mask.
    std::vector<GradedPolynomial> minors(std::size_t{1} << n);
    minors[0] = GradedPolynomial(1);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const std::size_t row = n - static_cast<std::size_t>(__builtin_popcount(mask));
        GradedPolynomial acc;
        int sign = 1;
        for (std::size_t col = 0; col < n; ++col) {
            if (!(mask & (1u << col))) continue;
            const auto& entry = m[row][col];
            const auto& minor = minors[mask & ~(1u << col)];
            if (!entry.is_zero() && !minor.is_zero()) {
                auto term = entry * minor;
                if (sign < 0) term.scale(-1);
                acc += term;
            }
            sign = -sign;
        }
        minors[mask] = std::move(acc);
    }
    return minors[(std::size_t{1} << n) - 1];
}

inline void require_single_family(const GradedPolynomial& p, const std::string& family) {
    for (const auto& f : p.families())
        if (f != family)
            throw Error(errc::invalid_argument,
                        "polynomial mixes family '" + f + "' into a '" + family + "' computation");
}

}  // namespace detail

// s_λ(b) = det{ b_{λ*_i + j − i} }, with b_0 = 1 and b_{<0} = 0.
inline GradedPolynomial schur_in_elementary(const Partition& lambda, const std::string& family) {
    const Partition conj = conjugate(lambda);
    const std::size_t n = conj.length();
    std::vector<std::vector<GradedPolynomial>> m(n, std::vector<GradedPolynomial>(n));
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j) {
            const int idx = conj[i] + static_cast<int>(j) - static_cast<int>(i);
            if (idx == 0)
                m[i - 1][j - 1] = GradedPolynomial(1);
            else if (idx > 0)
                m[i - 1][j - 1] = GradedPolynomial(var(family, idx));
        }
    return detail::polynomial_determinant(m);
}

// Σ α_λ s_λ(b) as a polynomial in the elementary letter.
inline GradedPolynomial to_elementary(const SchurExpansion& expansion, const std::string& family) {
    GradedPolynomial out;
    for (const auto& [lambda, coeff] : expansion.coeffs()) {
        auto s = schur_in_elementary(lambda, family);
        out += s.scale(coeff);
    }
    return out;
}

namespace detail {

inline MonomialPolynomial realize_unchecked(const GradedPolynomial& p, int numvars) {
    std::map<std::pair<int, int>, MonomialPolynomial> powers;
    auto power = [&](int i, int e) -> const MonomialPolynomial& {
        auto key = std::make_pair(i, e);
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        MonomialPolynomial base = MonomialPolynomial::elementary(numvars, i);
        MonomialPolynomial acc = MonomialPolynomial::constant(numvars, 1);
        for (int k = 0; k < e; ++k) acc = acc * base;
        return powers.emplace(key, std::move(acc)).first->second;
    };
    MonomialPolynomial out(numvars);
    for (const auto& [mono, coeff] : p.terms()) {
        MonomialPolynomial term = MonomialPolynomial::constant(numvars, coeff);
        for (const auto& [v, e] : mono.factors()) {
            term = term * power(v.index, e);
            if (term.is_zero()) break;
        }
        out += term;
    }
    return out;
}

}  // namespace detail

// Image of p under b_i ↦ e_i(x_1..x_numvars).
inline MonomialPolynomial realize_in_monomials(const GradedPolynomial& p, const std::string& family,
                                               int numvars) {
    detail::require_single_family(p, family);
    if (numvars < 0 || numvars < p.degree())
        throw Error(errc::unfaithful, "need at least " + std::to_string(p.degree()) +
                                          " variables to realize a degree-" + std::to_string(p.degree()) +
                                          " polynomial faithfully");
    return detail::realize_unchecked(p, numvars);
}

// Expands a symmetric polynomial in x_1..x_n on the Schur basis by repeatedly
// cancelling the lexicographically leading monomial x^λ with α·s_λ.
inline SchurExpansion expand_monomial_in_schur(const MonomialPolynomial& f) {
    using Exponents = MonomialPolynomial::Exponents;
    const int n = f.numvars();

    // Symmetric iff every monomial agrees with its sorted representative and
    // each representative's full orbit is present.
    std::map<Exponents, Rational> dominant;
    std::map<Exponents, long> orbit_seen;
    for (const auto& [e, c] : f.terms()) {
        Exponents sorted = e;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        if (f.coefficient(sorted) != c) throw Error(errc::non_symmetric, "polynomial is not symmetric");
        dominant.emplace(sorted, c);
        ++orbit_seen[sorted];
    }
    for (const auto& [sorted, seen] : orbit_seen) {
        // n! / prod(multiplicity!)
        long orbit = 1;
        int placed = 0;
        for (std::size_t i = 0; i < sorted.size();) {
            std::size_t j = i;
            while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
            for (std::size_t k = 1; k <= j - i; ++k) orbit = orbit * ++placed / static_cast<long>(k);
            i = j;
        }
        if (orbit != seen) throw Error(errc::non_symmetric, "polynomial is not symmetric");
    }

    std::map<Partition, std::map<Exponents, Rational>> kostka;
    auto kostka_row = [&](const Partition& lambda) -> const std::map<Exponents, Rational>& {
        auto it = kostka.find(lambda);
        if (it != kostka.end()) return it->second;
        auto realized = detail::realize_unchecked(schur_in_elementary(lambda, "b"), n);
        std::map<Exponents, Rational> row;
        for (const auto& [e, c] : realized.terms())
            if (std::is_sorted(e.begin(), e.end(), std::greater<>())) row.emplace(e, c);
        return kostka.emplace(lambda, std::move(row)).first->second;
    };

    SchurExpansion out;
    while (!dominant.empty()) {
        auto lead = std::prev(dominant.end());
        const Partition lambda = Partition::from_padded(lead->first);
        const Rational alpha = lead->second;
        out.add(lambda, alpha);
        for (const auto& [e, k] : kostka_row(lambda)) {
            auto [it, inserted] = dominant.try_emplace(e, -alpha * k);
            if (!inserted) {
                it->second -= alpha * k;
                if (it->second == 0) dominant.erase(it);
            }
        }
    }
    return out;
}

// Unique {α_λ} with p = Σ α_λ s_λ(b) for p in the single elementary family `family`.
inline SchurExpansion expand_in_schur(const GradedPolynomial& p, const std::string& family) {
    detail::require_single_family(p, family);
    if (p.is_zero()) return {};
    const int numvars = std::max(p.degree(), 0);
    return expand_monomial_in_schur(realize_in_monomials(p, family, numvars));
}

namespace detail {

// Number of Littlewood–Richardson tableaux of shape ν/λ and content μ.
inline long count_lr_tableaux(const Partition& nu, const Partition& lambda, const Partition& mu) {
    struct Cell {
        int row;
        int col;
    };
    // Reading order: rows top to bottom, each row right to left.
    std::vector<Cell> cells;
    for (int r = 1; r <= static_cast<int>(nu.length()); ++r)
        for (int c = nu[r] - 1; c >= lambda[r]; --c) cells.push_back({r, c});

    const int rows = static_cast<int>(nu.length());
    const int width = nu.largest();
    std::vector<int> filling(static_cast<std::size_t>((rows + 1) * std::max(width, 1)), 0);
    auto at = [&](int r, int c) -> int& { return filling[static_cast<std::size_t>(r * width + c)]; };
    std::vector<int> used(mu.length() + 2, 0);

    long count = 0;
    auto place = [&](auto&& self, std::size_t idx) -> void {
        if (idx == cells.size()) {
            ++count;
            return;
        }
        const auto [r, c] = cells[idx];
        int hi = static_cast<int>(mu.length());
        if (c + 1 < nu[r]) hi = std::min(hi, at(r, c + 1));  // rows weakly increase
        int lo = 1;
        if (r > 1 && c >= lambda[r - 1]) lo = at(r - 1, c) + 1;  // columns strictly increase
        for (int v = lo; v <= hi; ++v) {
            if (used[v] >= mu[v]) continue;
            if (v > 1 && used[v] + 1 > used[v - 1]) continue;  // lattice word
            ++used[v];
            at(r, c) = v;
            self(self, idx + 1);
            at(r, c) = 0;
            --used[v];
        }
    };
    place(place, 0);
    return count;
}

}  // namespace detail

// s_λ · s_μ = Σ c^ν_{λμ} s_ν via the Littlewood–Richardson rule.
inline SchurExpansion lr_product(const Partition& lambda, const Partition& mu) {
    SchurExpansion out;
    const int total = lambda.weight() + mu.weight();
    for (const auto& nu : partitions_of(total, lambda.largest() + mu.largest(),
                                        static_cast<int>(lambda.length() + mu.length()))) {
        if (!contains(nu, lambda) || !contains(nu, mu)) continue;
        if (long c = detail::count_lr_tableaux(nu, lambda, mu); c != 0) out.add(nu, Rational(c));
    }
    return out;
}

inline std::string to_display(const SchurExpansion& e) {
    if (e.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [lambda, coeff] : e.coeffs()) {
        if (!first) out += coeff < 0 ? " - " : " + ";
        else if (coeff < 0) out += "-";
        first = false;
        Rational mag = abs(coeff);
        if (mag != 1) out += to_string(mag) + "*";
        out += "s" + lambda.str();
    }
    return out;
}

}  // namespace thom
