#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thom/error.hpp"
#include "thom/rational.hpp"

namespace thom {

// Variable-family tags used across the library.
namespace fam {
inline const std::string c = "c";            // source classes, c(L_n^*)
inline const std::string cprime = "c'";      // target classes, c(L_k^*)
inline const std::string ctilde = "ctilde";  // relative classes
inline const std::string w = "w";
inline const std::string wprime = "w'";
inline const std::string wtilde = "wtilde";
inline const std::string m = "m";          // first Chern class of a line bundle
inline const std::string alpha = "alpha";  // formal twist parameter
inline const std::string t = "t";          // components of a fresh unit series
inline const std::string q = "q";          // components of a rank-r series
inline const std::string x = "x";          // formal roots, degree one each
inline const std::string y = "y";
}  // namespace fam

enum class Grading {
    indexed,     // deg(b_i) = i
    unit,        // every member has degree 1
    weightless,  // degree 0
};

// Unregistered tags are indexed families.
inline Grading grading_of(std::string_view family) {
    if (family == fam::alpha) return Grading::weightless;
    if (family == fam::m || family == fam::x || family == fam::y) return Grading::unit;
    return Grading::indexed;
}

struct Variable {
    std::string family;
    int index = 1;

    int degree() const {
        switch (grading_of(family)) {
            case Grading::indexed: return index;
            case Grading::unit: return 1;
            case Grading::weightless: return 0;
        }
        return 0;
    }

    std::string key() const { return family + "." + std::to_string(index); }

    auto operator<=>(const Variable&) const = default;
};

inline Variable var(std::string family, int index = 1) {
    if (index < 1) throw Error(errc::invalid_argument, "variable index must be >= 1");
    return Variable{std::move(family), index};
}

// Parses "family.index"; the family may itself contain dots only before the last one.
inline Variable parse_variable(std::string_view key) {
    auto dot = key.rfind('.');
    if (dot == std::string_view::npos || dot == 0 || dot + 1 == key.size())
        throw Error(errc::parse, "variable key must look like family.index: '" + std::string(key) + "'");
    auto idx = key.substr(dot + 1);
    if (idx.find_first_not_of("0123456789") != std::string_view::npos)
        throw Error(errc::parse, "bad variable index in '" + std::string(key) + "'");
    int index = std::stoi(std::string(idx));
    if (index < 1) throw Error(errc::parse, "variable index must be >= 1 in '" + std::string(key) + "'");
    return Variable{std::string(key.substr(0, dot)), index};
}

// Product of variable powers, stored sorted by (family, index) with positive exponents.
class Monomial {
public:
    using Factor = std::pair<Variable, int>;

    Monomial() = default;

    explicit Monomial(std::vector<Factor> factors) {
        std::sort(factors.begin(), factors.end(),
                  [](const Factor& a, const Factor& b) { return a.first < b.first; });
        for (auto& [v, e] : factors) {
            if (e < 0) throw Error(errc::invalid_argument, "negative exponent on " + v.key());
            if (e == 0) continue;
            if (!factors_.empty() && factors_.back().first == v)
                factors_.back().second += e;
            else
                factors_.emplace_back(std::move(v), e);
        }
    }

    explicit Monomial(Variable v, int e = 1) : Monomial(std::vector<Factor>{{std::move(v), e}}) {}

    const std::vector<Factor>& factors() const noexcept { return factors_; }
    bool is_one() const noexcept { return factors_.empty(); }

    int degree() const {
        int d = 0;
        for (const auto& [v, e] : factors_) d += v.degree() * e;
        return d;
    }

    int exponent(const Variable& v) const {
        for (const auto& [u, e] : factors_)
            if (u == v) return e;
        return 0;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial out;
        out.factors_.reserve(a.factors_.size() + b.factors_.size());
        auto i = a.factors_.begin();
        auto j = b.factors_.begin();
        while (i != a.factors_.end() || j != b.factors_.end()) {
            if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
                out.factors_.push_back(*i++);
            } else if (i == a.factors_.end() || j->first < i->first) {
                out.factors_.push_back(*j++);
            } else {
                out.factors_.emplace_back(i->first, i->second + j->second);
                ++i;
                ++j;
            }
        }
        return out;
    }

    auto operator<=>(const Monomial&) const = default;

private:
    std::vector<Factor> factors_;
};

// Sparse polynomial with exact rational coefficients over graded variable families.
class GradedPolynomial {
public:
    using Terms = std::map<Monomial, Rational>;

    GradedPolynomial() = default;
    GradedPolynomial(const Rational& constant) { add_term(Monomial{}, constant); }  // NOLINT
    GradedPolynomial(int constant) : GradedPolynomial(Rational(constant)) {}      // NOLINT
    GradedPolynomial(const Variable& v) { add_term(Monomial(v), 1); }             // NOLINT
    GradedPolynomial(const Monomial& mono, const Rational& coeff = 1) { add_term(mono, coeff); }

    // Rvalue overloads keep range-for over a temporary safe.
    const Terms& terms() const& noexcept { return terms_; }
    Terms terms() && noexcept { return std::move(terms_); }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    Rational coefficient(const Monomial& mono) const {
        auto it = terms_.find(mono);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Monomial& mono, const Rational& coeff) {
        if (coeff == 0) return;
        auto [it, inserted] = terms_.try_emplace(mono, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    // Maximum total degree; -1 for the zero polynomial.
    int degree() const {
        int d = -1;
        for (const auto& [mono, coeff] : terms_) d = std::max(d, mono.degree());
        return d;
    }

    bool is_homogeneous(int d) const {
        return std::all_of(terms_.begin(), terms_.end(),
                           [d](const auto& term) { return term.first.degree() == d; });
    }

    GradedPolynomial homogeneous_part(int d) const {
        GradedPolynomial out;
        for (const auto& [mono, coeff] : terms_)
            if (mono.degree() == d) out.terms_.emplace(mono, coeff);
        return out;
    }

    std::vector<std::string> families() const {
        std::vector<std::string> out;
        for (const auto& [mono, coeff] : terms_)
            for (const auto& [v, e] : mono.factors())
                if (std::find(out.begin(), out.end(), v.family) == out.end()) out.push_back(v.family);
        std::sort(out.begin(), out.end());
        return out;
    }

    GradedPolynomial& operator+=(const GradedPolynomial& other) {
        for (const auto& [mono, coeff] : other.terms_) add_term(mono, coeff);
        return *this;
    }
    GradedPolynomial& operator-=(const GradedPolynomial& other) {
        for (const auto& [mono, coeff] : other.terms_) add_term(mono, -coeff);
        return *this;
    }
    GradedPolynomial& scale(const Rational& s) {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [mono, coeff] : terms_) coeff *= s;
        }
        return *this;
    }

    friend GradedPolynomial operator+(GradedPolynomial a, const GradedPolynomial& b) { return a += b; }
    friend GradedPolynomial operator-(GradedPolynomial a, const GradedPolynomial& b) { return a -= b; }
    friend GradedPolynomial operator-(GradedPolynomial a) { return a.scale(-1); }

    friend GradedPolynomial operator*(const GradedPolynomial& a, const GradedPolynomial& b) {
        GradedPolynomial out;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
        return out;
    }
    GradedPolynomial& operator*=(const GradedPolynomial& other) { return *this = *this * other; }

    bool operator==(const GradedPolynomial&) const = default;

private:
    Terms terms_;
};

inline GradedPolynomial pow(const GradedPolynomial& base, int e) {
    GradedPolynomial out(1);
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

// Replaces every variable for which `image` returns a value; other variables are kept.
inline GradedPolynomial substitute(
    const GradedPolynomial& p,
    const std::function<std::optional<GradedPolynomial>(const Variable&)>& image) {
    GradedPolynomial out;
    std::map<std::pair<Variable, int>, GradedPolynomial> powers;
    for (const auto& [mono, coeff] : p.terms()) {
        GradedPolynomial term(coeff);
        std::vector<Monomial::Factor> kept;
        for (const auto& [v, e] : mono.factors()) {
            auto img = image(v);
            if (!img) {
                kept.emplace_back(v, e);
                continue;
            }
            auto key = std::make_pair(v, e);
            auto it = powers.find(key);
            if (it == powers.end()) it = powers.emplace(key, pow(*img, e)).first;
            term *= it->second;
            if (term.is_zero()) break;
        }
        if (!term.is_zero() && !kept.empty()) term *= GradedPolynomial(Monomial(std::move(kept)));
        out += term;
    }
    return out;
}

// Renames families according to `rename`; families not listed are kept.
inline GradedPolynomial rename_families(const GradedPolynomial& p,
                                        const std::map<std::string, std::string>& rename) {
    GradedPolynomial out;
    for (const auto& [mono, coeff] : p.terms()) {
        std::vector<Monomial::Factor> f;
        for (const auto& [v, e] : mono.factors()) {
            auto it = rename.find(v.family);
            f.emplace_back(Variable{it == rename.end() ? v.family : it->second, v.index}, e);
        }
        out.add_term(Monomial(std::move(f)), coeff);
    }
    return out;
}

// Largest exponent of `v` over all terms.
inline int degree_in(const GradedPolynomial& p, const Variable& v) {
    int d = 0;
    for (const auto& [mono, coeff] : p.terms()) d = std::max(d, mono.exponent(v));
    return d;
}

// Coefficient of v^e, as a polynomial in the remaining variables.
inline GradedPolynomial coefficient_of_power(const GradedPolynomial& p, const Variable& v, int e) {
    GradedPolynomial out;
    for (const auto& [mono, coeff] : p.terms()) {
        if (mono.exponent(v) != e) continue;
        std::vector<Monomial::Factor> rest;
        for (const auto& f : mono.factors())
            if (!(f.first == v)) rest.push_back(f);
        out.add_term(Monomial(std::move(rest)), coeff);
    }
    return out;
}

inline std::string to_display(const GradedPolynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mono, coeff] : p.terms()) {
        Rational mag = abs(coeff);
        if (first) {
            if (coeff < 0) out += "-";
        } else {
            out += coeff < 0 ? " - " : " + ";
        }
        first = false;
        std::string body;
        for (const auto& [v, e] : mono.factors()) {
            if (!body.empty()) body += "*";
            body += v.family;
            const bool scalar = (v.family == fam::m || v.family == fam::alpha) && v.index == 1;
            if (!scalar) body += "_" + std::to_string(v.index);
            if (e > 1) body += "^" + std::to_string(e);
        }
        if (body.empty()) {
            out += to_string(mag);
        } else {
            if (mag != 1) out += to_string(mag) + "*";
            out += body;
        }
    }
    return out;
}

}  // namespace thom
