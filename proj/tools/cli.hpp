#pragma once

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "thom/thom.hpp"

// The `thom` command line. Exit codes: 0 success, 1 domain error or failed verification, 2 usage error.
// Every subcommand writes one canonical JSON document (or, for verify, JSON lines plus a summary).
namespace thom::cli {

using io::Json;

namespace detail {

// Arguments starting with '{' or '[' are inline JSON; anything else names a file.
inline std::string read_source(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return arg;
    std::ifstream in(arg);
    if (!in) throw Error(errc::parse, "cannot open '" + arg + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Json read_json(const std::string& arg) {
    const std::string text = read_source(arg);
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(errc::parse, "'" + arg + "' is not valid JSON: " + e.what());
    }
}

inline Partition read_partition(const std::string& arg) { return io::partition_from_json(read_json(arg)); }

// The single family a polynomial lives in, or the fallback when it is constant.
inline std::string sole_family(const GradedPolynomial& p, const std::string& fallback) {
    const auto fams = p.families();
    if (fams.size() > 1) throw Error(errc::invalid_argument, "polynomial mixes variable families; pass --family");
    return fams.empty() ? fallback : *fams.begin();
}

// Explicit re-truncation to a smaller degree; growing a series is refused.
inline ChernSeries truncate_to(const ChernSeries& s, int d) {
    if (d > s.truncation())
        throw Error(errc::truncation_mismatch, "requested truncation " + std::to_string(d) +
                                                   " exceeds the series truncation " + std::to_string(s.truncation()));
    std::vector<GradedPolynomial> comps(s.components().begin(), s.components().begin() + d + 1);
    return ChernSeries::from_components(d, comps, s.rank());
}

inline std::string human_series(const ChernSeries& s) {
    std::ostringstream os;
    for (int i = 0; i <= s.truncation(); ++i) os << "[" << i << "] " << to_display(s[i]) << "\n";
    return os.str();
}

inline std::string human_report(const VerificationReport& r) {
    std::ostringstream os;
    os << std::left << std::setw(24) << (r.name + " ") << (r.passed() ? "PASS" : "FAIL") << "  damon=" << r.damon_ok
       << " positive=" << r.positive_ok << " stable=" << r.stabilization_ok;
    if (r.relative_form) os << "  " << to_display(*r.relative_form);
    return os.str();
}

}  // namespace detail

struct Options {
    bool human = false;
    std::string family = fam::c;
    std::string arg1;
    std::string arg2;
    std::string mode;
    std::optional<int> trunc;
    int rank = -1;
    int n = -1;
    int N = -1;
    int k = -1;
    int oracle_n = 1;
};

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Thom-polynomial workbench", "thom"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_flag("--human", o.human, "Aligned human-readable output instead of JSON");

    auto* conjugate_cmd = app.add_subcommand("conjugate", "Conjugate partition");
    conjugate_cmd->add_option("partition", o.arg1)->required();

    auto* schur = app.add_subcommand("schur", "s_lambda in the elementary letters of a family");
    schur->add_option("partition", o.arg1)->required();
    schur->add_option("--family", o.family, "Variable family of the elementary letters");

    auto* expand = app.add_subcommand("expand", "Schur expansion of a polynomial in one family");
    expand->add_option("poly", o.arg1)->required();
    expand->add_option("--family", o.family, "Family to expand in (default: the polynomial's own)");

    auto* lr = app.add_subcommand("lr", "Littlewood-Richardson product s_lambda * s_mu");
    lr->add_option("lambda", o.arg1)->required();
    lr->add_option("mu", o.arg2)->required();

    auto* relchern = app.add_subcommand("relchern", "Relative classes c'/c");
    relchern->add_option("cprime", o.arg1)->required();
    relchern->add_option("c", o.arg2)->required();
    relchern->add_option("--trunc", o.trunc, "Truncation degree")->check(CLI::NonNegativeNumber);

    auto* twist = app.add_subcommand("twist", "Twist a series by a line bundle with c_1 = alpha*m");
    twist->add_option("series", o.arg1)->required();
    twist->add_option("--rank", o.rank, "Rank of the bundle")->required()->check(CLI::NonNegativeNumber);

    auto* compose_cmd = app.add_subcommand("compose", "Jet composition: apply the first jet, then the second");
    compose_cmd->add_option("inner", o.arg1)->required();
    compose_cmd->add_option("outer", o.arg2)->required();

    auto* localalg = app.add_subcommand("localalg", "Invariants of the local algebra of a jet");
    localalg->add_option("jet", o.arg1)->required();

    auto* grassmann = app.add_subcommand("grassmann", "Schubert calculus on Gr(n, N)");
    grassmann->add_option("mode", o.mode)->required()->check(CLI::IsMember({"product", "pair"}));
    grassmann->add_option("lambda", o.arg1)->required();
    grassmann->add_option("mu", o.arg2)->required();
    grassmann->add_option("--n", o.n)->required()->check(CLI::NonNegativeNumber);
    grassmann->add_option("--N", o.N)->required()->check(CLI::NonNegativeNumber);

    auto* verify = app.add_subcommand("verify", "Verify every entry of a catalogue");
    verify->add_option("catalogue", o.arg1)->required();
    verify->add_option("--trunc", o.trunc, "Truncation degree (default: twice each entry's degree)")
        ->check(CLI::NonNegativeNumber);

    auto* oracle = app.add_subcommand("oracle", "Oracle-derived catalogue entries");
    oracle->add_option("which", o.mode)->required()->check(CLI::IsMember({"sigma1"}));
    oracle->add_option("--k", o.k)->required()->check(CLI::PositiveNumber);
    oracle->add_option("--n", o.oracle_n, "Source dimension (default 1)")->check(CLI::PositiveNumber);
    oracle->add_option("--trunc", o.trunc, "Truncation degree")->check(CLI::NonNegativeNumber);

    auto* mod2 = app.add_subcommand("mod2", "Reduce an integral polynomial mod 2");
    mod2->add_option("poly", o.arg1)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    auto emit = [&](const Json& j, const std::string& human) {
        if (o.human)
            out << human << (human.empty() || human.back() != '\n' ? "\n" : "");
        else
            out << j.dump() << "\n";
    };

    try {
        if (conjugate_cmd->parsed()) {
            const Partition p = conjugate(detail::read_partition(o.arg1));
            emit(io::to_json(p), p.str());
        } else if (schur->parsed()) {
            const auto p = schur_in_elementary(detail::read_partition(o.arg1), o.family);
            emit(io::to_json(p), to_display(p));
        } else if (expand->parsed()) {
            const auto p = io::polynomial_from_json(detail::read_json(o.arg1));
            const std::string family =
                expand->count("--family") ? o.family : detail::sole_family(p, o.family);
            const auto e = expand_in_schur(p, family);
            emit(io::to_json(e), to_display(e));
        } else if (lr->parsed()) {
            const auto e = lr_product(detail::read_partition(o.arg1), detail::read_partition(o.arg2));
            emit(io::to_json(e), to_display(e));
        } else if (relchern->parsed()) {
            auto cp = io::chern_series_from_json(detail::read_json(o.arg1));
            auto c = io::chern_series_from_json(detail::read_json(o.arg2));
            if (o.trunc) {
                cp = detail::truncate_to(cp, *o.trunc);
                c = detail::truncate_to(c, *o.trunc);
            }
            const auto rel = relative_chern(cp, c);
            emit(io::to_json(rel), detail::human_series(rel));
        } else if (twist->parsed()) {
            const auto e = io::chern_series_from_json(detail::read_json(o.arg1)).with_rank(o.rank);
            const auto t = twist_by_line(e);
            emit(io::to_json(t), detail::human_series(t));
        } else if (compose_cmd->parsed()) {
            const auto j = compose(io::jet_from_json(detail::read_json(o.arg1)),
                                   io::jet_from_json(detail::read_json(o.arg2)));
            emit(io::to_json(j), io::to_json(j).dump(2));
        } else if (localalg->parsed()) {
            const auto r = local_algebra(io::jet_from_json(detail::read_json(o.arg1)));
            emit(io::to_json(r), io::to_json(r).dump(2));
        } else if (grassmann->parsed()) {
            const GrassmannianRing ring(o.n, o.N);
            const auto lambda = detail::read_partition(o.arg1);
            const auto mu = detail::read_partition(o.arg2);
            if (o.mode == "product") {
                const auto e = cup_product(ring, lambda, mu);
                emit(io::to_json(e), to_display(e));
            } else {
                const long v = intersection_number(ring, lambda, mu);
                emit(Json(v), std::to_string(v));
            }
        } else if (verify->parsed()) {
            const auto catalogue = io::catalogue_load(o.arg1);
            const auto reports = verify_catalogue(catalogue, o.trunc);
            std::size_t passed = 0;
            for (const auto& r : reports) {
                passed += r.passed() ? 1 : 0;
                emit(io::to_json(r), detail::human_report(r));
            }
            out << "PASS " << passed << "/" << reports.size() << "\n";
            return passed == reports.size() ? 0 : 1;
        } else if (oracle->parsed()) {
            const int d = o.trunc.value_or(2 * (o.k - o.oracle_n + 1));
            const auto e = sigma1_oracle(o.oracle_n, o.k, d);
            emit(io::to_json(e), e.name + "  " + to_display(e.poly));
        } else if (mod2->parsed()) {
            const auto p = reduce_mod2(io::polynomial_from_json(detail::read_json(o.arg1)));
            emit(io::to_json(p), to_display(p.lift()));
        }
    } catch (const Error& e) {
        err << Json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace thom::cli
