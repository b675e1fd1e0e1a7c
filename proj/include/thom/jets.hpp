#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "thom/error.hpp"
#include "thom/linalg.hpp"
#include "thom/rational.hpp"

namespace thom {

// Exponent vector of a monomial z_1^{a_1}...z_n^{a_n}.
using MultiIndex = std::vector<int>;

// Element of J_d^n: a polynomial without constant term, truncated above degree d.
using JetComponent = std::map<MultiIndex, Rational>;

inline int total_degree(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

// A map-jet in J_d^{n,k}: k component polynomials in n source variables.
class JetMap {
public:
    JetMap(int n, int k, int d) : n_(n), k_(k), d_(d), components_(static_cast<std::size_t>(k)) {
        if (n < 0 || k < 0 || d < 1) throw Error(errc::invalid_argument, "jet needs n, k >= 0 and d >= 1");
    }

    JetMap(int n, int k, int d, std::vector<JetComponent> components) : JetMap(n, k, d) {
        if (static_cast<int>(components.size()) != k)
            throw Error(errc::dimension_mismatch, "expected " + std::to_string(k) + " components");
        for (int j = 0; j < k; ++j)
            for (const auto& [a, c] : components[static_cast<std::size_t>(j)]) add(j, a, c);
    }

    static JetMap identity(int n, int d) {
        JetMap id(n, n, d);
        for (int i = 0; i < n; ++i) id.add(i, unit_index(n, i), 1);
        return id;
    }

    static MultiIndex unit_index(int n, int i) {
        MultiIndex a(static_cast<std::size_t>(n), 0);
        a[static_cast<std::size_t>(i)] = 1;
        return a;
    }

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    int d() const noexcept { return d_; }
    const std::vector<JetComponent>& components() const& noexcept { return components_; }
    std::vector<JetComponent> components() && noexcept { return std::move(components_); }
    const JetComponent& component(int j) const { return components_.at(static_cast<std::size_t>(j)); }

    // Adds c·z^a to component j. Constant terms are rejected; terms above degree d are dropped.
    void add(int j, const MultiIndex& a, const Rational& c) {
        if (j < 0 || j >= k_) throw Error(errc::dimension_mismatch, "component index out of range");
        if (static_cast<int>(a.size()) != n_)
            throw Error(errc::dimension_mismatch, "multi-index length differs from the source dimension");
        if (std::any_of(a.begin(), a.end(), [](int e) { return e < 0; }))
            throw Error(errc::invalid_argument, "negative exponent in multi-index");
        const int deg = total_degree(a);
        if (deg == 0 && c != 0) throw Error(errc::invariant, "map-jets have no constant term");
        if (deg > d_ || c == 0) return;
        auto& comp = components_[static_cast<std::size_t>(j)];
        auto [it, inserted] = comp.try_emplace(a, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) comp.erase(it);
        }
    }

    bool operator==(const JetMap&) const = default;

private:
    int n_;
    int k_;
    int d_;
    std::vector<JetComponent> components_;
};

namespace detail {

inline JetComponent jet_multiply(const JetComponent& a, const JetComponent& b, int d) {
    JetComponent out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            MultiIndex e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            if (total_degree(e) > d) continue;
            auto [it, inserted] = out.try_emplace(e, ca * cb);
            if (!inserted) {
                it->second += ca * cb;
                if (it->second == 0) out.erase(it);
            }
        }
    return out;
}

inline void jet_accumulate(JetComponent& acc, const JetComponent& term, const Rational& scale) {
    for (const auto& [e, c] : term) {
        auto [it, inserted] = acc.try_emplace(e, c * scale);
        if (!inserted) {
            it->second += c * scale;
            if (it->second == 0) acc.erase(it);
        }
    }
}

}  // namespace detail

// Substitutes the components of `inner` (J_d^{n,k}) into `outer` (J_d^{k,m}) and truncates above
// degree d, giving outer∘inner in J_d^{n,m}: apply `inner` first.
inline JetMap compose(const JetMap& inner, const JetMap& outer) {
    if (inner.k() != outer.n())
        throw Error(errc::dimension_mismatch, "cannot compose: inner target dimension " + std::to_string(inner.k()) +
                                                  " differs from outer source dimension " +
                                                  std::to_string(outer.n()));
    if (inner.d() != outer.d()) throw Error(errc::dimension_mismatch, "cannot compose jets of different order");
    const int d = inner.d();
    const int n = inner.n();
    // powers[i][e] = (inner_i)^e truncated.
    std::vector<std::vector<JetComponent>> powers(static_cast<std::size_t>(inner.k()));
    auto power = [&](int i, int e) -> const JetComponent& {
        auto& list = powers[static_cast<std::size_t>(i)];
        if (list.empty()) {
            JetComponent one;
            one.emplace(MultiIndex(static_cast<std::size_t>(n), 0), Rational(1));
            list.push_back(std::move(one));
        }
        while (static_cast<int>(list.size()) <= e)
            list.push_back(detail::jet_multiply(list.back(), inner.component(i), d));
        return list[static_cast<std::size_t>(e)];
    };
    JetMap out(n, outer.k(), d);
    for (int j = 0; j < outer.k(); ++j) {
        JetComponent acc;
        for (const auto& [a, c] : outer.component(j)) {
            JetComponent term;
            term.emplace(MultiIndex(static_cast<std::size_t>(n), 0), Rational(1));
            for (int i = 0; i < outer.n() && !term.empty(); ++i)
                if (a[static_cast<std::size_t>(i)] > 0) term = detail::jet_multiply(term, power(i, a[static_cast<std::size_t>(i)]), d);
            detail::jet_accumulate(acc, term, c);
        }
        for (const auto& [e, c] : acc) out.add(j, e, c);
    }
    return out;
}

// k×n matrix of degree-one coefficients: entry (j, i) is the coefficient of z_i in Ψ_j.
inline Matrix linear_part(const JetMap& psi) {
    Matrix m(static_cast<std::size_t>(psi.k()), static_cast<std::size_t>(psi.n()));
    for (int j = 0; j < psi.k(); ++j)
        for (const auto& [a, c] : psi.component(j))
            if (total_degree(a) == 1) {
                auto i = static_cast<std::size_t>(std::find(a.begin(), a.end(), 1) - a.begin());
                m(static_cast<std::size_t>(j), i) = c;
            }
    return m;
}

inline bool is_diff(const JetMap& delta) {
    if (delta.n() != delta.k()) throw Error(errc::dimension_mismatch, "a diffeomorphism jet must be square");
    return determinant(linear_part(delta)) != 0;
}

// Two-sided inverse in Diff_d^n, built one homogeneous layer at a time: with g the inverse
// through degree s−1, the degree-s layer is −A^{-1} [Δ∘g]_s where A = Lin Δ.
inline JetMap invert_jet(const JetMap& delta) {
    if (!is_diff(delta)) throw Error(errc::not_invertible, "linear part is not invertible");
    const int n = delta.n();
    const int d = delta.d();
    const Matrix a_inv = inverse(linear_part(delta));
    JetMap g(n, n, d);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            g.add(j, JetMap::unit_index(n, i), a_inv(static_cast<std::size_t>(j), static_cast<std::size_t>(i)));
    for (int s = 2; s <= d; ++s) {
        const JetMap residual = compose(g, delta);
        JetMap next = g;
        for (int r = 0; r < n; ++r)
            for (const auto& [e, c] : residual.component(r)) {
                if (total_degree(e) != s) continue;
                for (int j = 0; j < n; ++j) {
                    const Rational& f = a_inv(static_cast<std::size_t>(j), static_cast<std::size_t>(r));
                    if (f != 0) next.add(j, e, -f * c);
                }
            }
        g = std::move(next);
    }
    return g;
}

// Left action of Diff_d^n × Diff_d^k on J_d^{n,k}: (Δn, Δk)·Ψ = Δk ∘ Ψ ∘ Δn^{-1}.
// With this order, (g2·g1)·Ψ = g2·(g1·Ψ) for the componentwise group law
// (Δn2, Δk2)·(Δn1, Δk1) = (Δn2∘Δn1, Δk2∘Δk1).
inline JetMap left_right_act(const JetMap& delta_n, const JetMap& delta_k, const JetMap& psi) {
    if (delta_n.n() != psi.n() || delta_n.k() != psi.n() || delta_k.n() != psi.k() || delta_k.k() != psi.k())
        throw Error(errc::dimension_mismatch, "diffeomorphism sizes do not match the jet");
    if (delta_n.d() != psi.d() || delta_k.d() != psi.d())
        throw Error(errc::dimension_mismatch, "jet orders differ");
    if (!is_diff(delta_n) || !is_diff(delta_k))
        throw Error(errc::not_invertible, "left-right action needs diffeomorphism jets");
    return compose(compose(invert_jet(delta_n), psi), delta_k);
}

// Invariants of A_Ψ = J_d^n / I⟨Ψ_1..Ψ_k⟩.
struct LocalAlgebraReport {
    int dimension = 0;
    std::vector<int> hilbert;        // h_1..h_d: dim A^i / A^{i+1}
    int nilpotency_index = 1;        // least m with A^m = 0
    std::vector<int> pairing_ranks;  // i = 1, 2, ... while A^{i+1} != 0

    bool operator==(const LocalAlgebraReport&) const = default;
};

namespace detail {

// Monomials of degree 1..d in n variables: degree ascending, grevlex descending within a degree.
inline std::vector<MultiIndex> jet_monomial_basis(int n, int d) {
    std::vector<MultiIndex> out;
    MultiIndex cur(static_cast<std::size_t>(n), 0);
    for (int deg = 1; deg <= d; ++deg) {
        std::vector<MultiIndex> layer;
        auto rec = [&](auto&& self, int var, int remaining) -> void {
            if (var == n - 1) {
                cur[static_cast<std::size_t>(var)] = remaining;
                layer.push_back(cur);
                return;
            }
            for (int e = remaining; e >= 0; --e) {
                cur[static_cast<std::size_t>(var)] = e;
                self(self, var + 1, remaining - e);
            }
        };
        if (n > 0) rec(rec, 0, deg);
        // grevlex: a > b iff the last nonzero entry of a − b is negative.
        std::sort(layer.begin(), layer.end(), [](const MultiIndex& a, const MultiIndex& b) {
            for (std::size_t i = a.size(); i-- > 0;)
                if (a[i] != b[i]) return a[i] < b[i];
            return false;
        });
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

}  // namespace detail

// Builds the ideal as the span of m·Ψ_j (m a monomial of degree 0..d−1, truncated at d) inside the
// monomial basis of J_d^n, and reads the invariants off a reduced echelon form whose pivots are the
// lowest-degree monomials. The non-pivot monomials of degree ≥ i then span A^i.
inline LocalAlgebraReport local_algebra(const JetMap& psi) {
    const int n = psi.n();
    const int d = psi.d();
    const auto basis = detail::jet_monomial_basis(n, d);
    std::map<MultiIndex, std::size_t> column;
    for (std::size_t i = 0; i < basis.size(); ++i) column.emplace(basis[i], i);

    auto to_vector = [&](const JetComponent& p) {
        std::vector<Rational> v(basis.size());
        for (const auto& [e, c] : p) v[column.at(e)] = c;
        return v;
    };

    RowEchelon ideal(basis.size());
    std::vector<MultiIndex> multipliers{MultiIndex(static_cast<std::size_t>(n), 0)};
    for (const auto& b : basis)
        if (total_degree(b) <= d - 1) multipliers.push_back(b);
    for (int j = 0; j < psi.k(); ++j) {
        if (psi.component(j).empty()) continue;
        for (const auto& m : multipliers) {
            JetComponent mono;
            mono.emplace(m, Rational(1));
            ideal.insert(to_vector(detail::jet_multiply(mono, psi.component(j), d)));
        }
    }

    LocalAlgebraReport report;
    report.dimension = static_cast<int>(basis.size() - ideal.rank());
    report.hilbert.assign(static_cast<std::size_t>(d), 0);
    std::vector<std::vector<std::size_t>> standard(static_cast<std::size_t>(d) + 2);
    int top = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (ideal.is_pivot(i)) continue;
        const int deg = total_degree(basis[i]);
        ++report.hilbert[static_cast<std::size_t>(deg - 1)];
        standard[static_cast<std::size_t>(deg)].push_back(i);
        top = std::max(top, deg);
    }
    report.nilpotency_index = top + 1;

    // Rank of A/A² → Hom(A^i/A^{i+1}, A^{i+1}/A^{i+2}), u ↦ (v ↦ uv).
    for (int i = 1; i + 1 < report.nilpotency_index; ++i) {
        const auto& src = standard[static_cast<std::size_t>(i)];
        const auto& dst = standard[static_cast<std::size_t>(i + 1)];
        std::vector<std::vector<Rational>> operators;
        for (std::size_t u : standard[1]) {
            std::vector<Rational> flat;
            flat.reserve(src.size() * dst.size());
            for (std::size_t v : src) {
                JetComponent pu, pv;
                pu.emplace(basis[u], Rational(1));
                pv.emplace(basis[v], Rational(1));
                const auto nf = ideal.reduce(to_vector(detail::jet_multiply(pu, pv, d)));
                for (std::size_t w : dst) flat.push_back(nf[w]);
            }
            operators.push_back(std::move(flat));
        }
        report.pairing_ranks.push_back(static_cast<int>(rank(operators, src.size() * dst.size())));
    }
    return report;
}

// Necessary condition for A_{Ψ1} ≅ A_{Ψ2}: every report field agrees.
inline bool contact_invariants_equal(const JetMap& psi1, const JetMap& psi2) {
    if (psi1.n() != psi2.n() || psi1.d() != psi2.d())
        throw Error(errc::dimension_mismatch, "contact invariants compare jets with equal n and d");
    return local_algebra(psi1) == local_algebra(psi2);
}

}  // namespace thom
