// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the number of failures.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include "oracles.hpp"
#include "thom/thom.hpp"

using namespace thom;

namespace {

using Clock = std::chrono::steady_clock;

// Criteria are exact; the only tolerances are wall-clock budgets in seconds.
struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<std::string()> check;  // empty string on success, else the first discrepancy
};

GradedPolynomial c(int i) { return var(fam::c, i); }
GradedPolynomial cp(int i) { return var(fam::cprime, i); }

std::string schur_fidelity() {
    for (int w = 0; w <= 6; ++w)
        for (const auto& lambda : partitions_of(w))
            if (realize_in_monomials(schur_in_elementary(lambda, "b"), "b", 6) != oracle::ssyt_polynomial(lambda, 6))
                return "s" + lambda.str() + " differs from its tableau polynomial";
    return {};
}

std::string lr_equivalence() {
    for (int total = 0; total <= 8; ++total)
        for (int a = 0; a <= total; ++a)
            for (const auto& lambda : partitions_of(a))
                for (const auto& mu : partitions_of(total - a))
                    if (lr_product(lambda, mu) != oracle::lr_by_realization(lambda, mu))
                        return "s" + lambda.str() + " * s" + mu.str();
    return {};
}

std::string relative_classes() {
    const int d = 10;
    const auto cs = ChernSeries::symbolic(fam::c, d);
    const auto rel = relative_chern(ChernSeries::symbolic(fam::cprime, d), cs);
    if (rel[1] != cp(1) - c(1)) return "c~_1 = " + to_display(rel[1]);
    if (rel[2] != cp(2) - cp(1) * c(1) + c(1) * c(1) - c(2)) return "c~_2 = " + to_display(rel[2]);
    const auto division = oracle::relative_by_division(d);
    for (int i = 0; i <= d; ++i)
        if (rel[i] != division[static_cast<std::size_t>(i)]) return "c~_" + std::to_string(i) + " disagrees with long division";
    if (!series_multiply(cs, series_invert(cs)).is_one()) return "c * c^{-1} != 1 through D = 10";
    return {};
}

std::string twist_formula() {
    const Variable alpha = var(fam::alpha);
    for (int r = 0; r <= 4; ++r) {
        const int d = r + 1;
        const auto e = ChernSeries::symbolic(fam::q, d, r);
        const auto t = twist_by_line(e);
        const auto roots = oracle::twisted_by_roots(r, d);
        for (int j = 0; j <= d; ++j) {
            const auto in_roots = substitute(t[j], [r](const Variable& v) -> std::optional<GradedPolynomial> {
                if (v.family == fam::q) return oracle::elementary_in_roots(r, v.index);
                return std::nullopt;
            });
            if (in_roots != roots[static_cast<std::size_t>(j)])
                return "rank " + std::to_string(r) + " component " + std::to_string(j) + " vs splitting roots";
        }
        const auto p = twist_remainder(t, e);
        for (int j = 1; j <= d; ++j) {
            const auto diff = t[j] - e[j];
            if (!coefficient_of_power(diff, alpha, 0).is_zero()) return "alpha = 0 value of the remainder is nonzero";
            if (GradedPolynomial(alpha) * p[static_cast<std::size_t>(j)] != diff) return "remainder is not divisible by alpha";
        }
    }
    return {};
}

std::string jet_laws() {
    std::mt19937 rng(5005);
    int cases = 0;
    for (int t = 0; t < 540; ++t) {
        const int n = 1 + t % 3, k = 1 + (t / 3) % 3, m = 1 + (t / 9) % 3, d = 1 + (t / 27) % 3;
        const auto a = oracle::random_jet(rng, n, k, d);
        const auto b = oracle::random_jet(rng, k, m, d);
        const auto cc = oracle::random_jet(rng, m, 2, d);
        if (compose(compose(a, b), cc) != compose(a, compose(b, cc))) return "associativity, case " + std::to_string(t);
        const Matrix lin = linear_part(compose(a, b));
        const Matrix prod = linear_part(b) * linear_part(a);
        for (std::size_t i = 0; i < lin.rows(); ++i)
            for (std::size_t j = 0; j < lin.cols(); ++j)
                if (lin(i, j) != prod(i, j)) return "linear-part functoriality, case " + std::to_string(t);
        const auto g = oracle::random_diff(rng, n, d);
        const auto h = oracle::random_diff(rng, n, d);
        const auto id = JetMap::identity(n, d);
        const auto gi = invert_jet(g);
        if (compose(g, gi) != id || compose(gi, g) != id) return "two-sided inverse, case " + std::to_string(t);
        if (compose(g, id) != g || compose(id, g) != g) return "identity law, case " + std::to_string(t);
        const auto gh = compose(g, h);
        if (!is_diff(gh) || determinant(linear_part(gh)) != determinant(linear_part(g)) * determinant(linear_part(h)))
            return "closure under composition, case " + std::to_string(t);
        ++cases;
    }
    if (cases < 500) return "only " + std::to_string(cases) + " cases";
    return {};
}

std::string contact_invariance() {
    std::mt19937 rng(6006);
    for (int t = 0; t < 240; ++t) {
        const int n = 1 + t % 2, k = 1 + (t / 2) % 3, d = 1 + (t / 6) % 3;
        const auto psi = oracle::random_jet(rng, n, k, d, 0.4);
        const auto moved = left_right_act(oracle::random_diff(rng, n, d), oracle::random_diff(rng, k, d), psi);
        if (local_algebra(psi) != local_algebra(moved)) return "report changed, case " + std::to_string(t);
    }
    JetMap morse(1, 1, 3);
    morse.add(0, {2}, 1);
    const auto r = local_algebra(morse);
    if (r.dimension != 1 || r.nilpotency_index != 2) return "Morse z^2 report";
    JetMap submersion(1, 1, 3);
    submersion.add(0, {1}, 1);
    if (local_algebra(submersion).dimension != 0) return "submersion report";
    return {};
}

CatalogueEntry corrupted_sigma1() {
    auto e = sigma1_oracle(2, 2);
    e.poly += c(1) * c(1);  // c_1^2 coefficient 1 -> 2
    e.name = "Sigma1-perturbed";
    return e;
}

std::string damon_desk_scale() {
    const int d = 8;
    const auto fresh = ChernSeries::symbolic(fam::t, d);
    for (int k = 1; k <= 4; ++k) {
        const auto e = sigma1_oracle(k, d);
        const auto r = check_damon(e, d);
        if (!r.expressible) return "Sigma1 k=" + std::to_string(k) + " not expressible";
        if (r.relative_form.size() != 1 || r.relative_form.coeffs().begin()->second != 1)
            return "Sigma1 k=" + std::to_string(k) + " relative form " + to_display(r.relative_form);
        if (!substitution_invariance(e, fresh, d)) return "Sigma1 k=" + std::to_string(k) + " not substitution invariant";
    }
    const auto bad = corrupted_sigma1();
    if (check_damon(bad, d).expressible) return "corrupted entry passed the Damon check";
    if (substitution_invariance(bad, fresh, d)) return "corrupted entry passed substitution invariance";
    return {};
}

std::string stabilization() {
    for (int n = 1; n <= 3; ++n)
        for (int k = n; k <= n + 3; ++k) {
            const int codim = k - n + 1;
            if (!check_stabilization(sigma1_oracle(n, k, codim), sigma1_oracle(n + 1, k + 1, codim)))
                return "Sigma1 (" + std::to_string(n) + "," + std::to_string(k) + ")";
        }
    if (check_stabilization(corrupted_sigma1(), sigma1_oracle(2, 3, 2))) return "perturbed control stabilized";
    return {};
}

std::string positivity() {
    for (int n = 1; n <= 3; ++n)
        for (int k = n; k <= n + 3; ++k) {
            const auto e = sigma1_oracle(n, k, 2 * (k - n + 1));
            const auto r = check_damon(e, 2 * e.codim);
            if (!r.expressible || !check_positive(r.relative_form)) return "Sigma1 relative form at (" + std::to_string(n) + "," + std::to_string(k) + ")";
        }
    for (int N = 0; N <= 5; ++N)
        for (int n = 0; n <= N; ++n) {
            const GrassmannianRing gr(n, N);
            for (const auto& a : gr.basis())
                for (const auto& b : gr.basis()) {
                    for (const auto& [nu, coeff] : cup_product(gr, a, b).coeffs())
                        if (coeff < 0 || !is_integer(coeff)) return "structure constant in Gr(" + std::to_string(n) + "," + std::to_string(N) + ")";
                    if (a.weight() + b.weight() != gr.top_degree()) continue;
                    const long expected = b == box_complement(a, gr.rows(), gr.cols()) ? 1 : 0;
                    if (intersection_number(gr, a, b) != expected)
                        return "pairing <" + a.str() + "," + b.str() + "> in Gr(" + std::to_string(n) + "," + std::to_string(N) + ")";
                }
        }
    return {};
}

std::string mod2() {
    std::mt19937 rng(1010);
    for (int t = 0; t < 300; ++t) {
        const auto a = oracle::random_integer_polynomial(rng);
        const auto b = oracle::random_integer_polynomial(rng);
        if (reduce_mod2(a + b) != reduce_mod2(a) + reduce_mod2(b)) return "additivity";
        if (reduce_mod2(a * b) != reduce_mod2(a) * reduce_mod2(b)) return "multiplicativity";
    }
    if (reduce_mod2(cp(1) - c(1)).lift() != GradedPolynomial(var(fam::wprime, 1)) + GradedPolynomial(var(fam::w, 1)))
        return "c'_1 - c_1 does not reduce to w'_1 + w_1";
    return {};
}

struct Spawned {
    int code;
    std::string out;
};

Spawned spawn(const std::string& args) {
    const std::string cmd = std::string(THOM_BINARY) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, {}};
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string end_to_end() {
    const std::string data = THOM_DATA_DIR;
    const auto good = spawn("verify " + data + "/sigma1.jsonl");
    if (good.code != 0 || good.out.find("PASS 4/4\n") == std::string::npos) return "sigma1 catalogue";
    const auto controls = spawn("verify " + data + "/controls.jsonl");
    if (controls.code != 1 || controls.out.find("PASS 0/7\n") == std::string::npos) return "negative controls";
    const auto a = spawn("verify " + data + "/catalogue.jsonl");
    const auto b = spawn("verify " + data + "/catalogue.jsonl");
    if (a.code != 1 || a.out.find("PASS 4/11\n") == std::string::npos) return "combined catalogue";
    if (a.out != b.out) return "report is not byte-stable";
    if (spawn("").code != 2) return "usage error exit code";
    if (spawn("conjugate [1,2]").code != 1) return "domain error exit code";
    return {};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "Schur determinant fidelity", 30, schur_fidelity},
        {2, "LR oracle equivalence", 60, lr_equivalence},
        {3, "Relative-class formulas", 5, relative_classes},
        {4, "Twist formula", 10, twist_formula},
        {5, "Jet algebra laws", 60, jet_laws},
        {6, "Contact invariance", 60, contact_invariance},
        {7, "Damon at desk scale", 120, damon_desk_scale},
        {8, "Stabilization", 30, stabilization},
        {9, "Schur positivity", 120, positivity},
        {10, "Mod-2 reduction", 5, mod2},
        {11, "End-to-end verify", 300, end_to_end},
    };
    const double suite_budget_seconds = 300;
    const auto suite_start = Clock::now();
    int failures = 0;
    for (const auto& cr : criteria) {
        const auto start = Clock::now();
        std::string why;
        try {
            why = cr.check();
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        if (why.empty() && secs > cr.budget_seconds) why = "over budget";
        const bool ok = why.empty();
        failures += ok ? 0 : 1;
        std::printf("%s  [%2d] %-28s %7.2fs / %.0fs%s%s\n", ok ? "PASS" : "FAIL", cr.id, cr.name, secs,
                    cr.budget_seconds, ok ? "" : "  ", why.c_str());
        std::fflush(stdout);
    }
    const double total = std::chrono::duration<double>(Clock::now() - suite_start).count();
    std::printf("%d/%zu criteria passed in %.2fs", static_cast<int>(criteria.size()) - failures, criteria.size(), total);
    if (total > suite_budget_seconds) {
        std::printf("  (over the %.0fs budget)", suite_budget_seconds);
        ++failures;
    }
    std::printf("\n");
    return failures;
}
