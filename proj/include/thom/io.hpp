#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "thom/chern.hpp"
#include "thom/error.hpp"
#include "thom/jets.hpp"
#include "thom/partition.hpp"
#include "thom/polynomial.hpp"
#include "thom/symfunc.hpp"
#include "thom/verify.hpp"

// JSON forms of every value type. Output objects keep insertion order, and insertion always
// follows the canonical term order, so serialization is byte-stable.
namespace thom::io {

using Json = nlohmann::ordered_json;

namespace detail {

template <class F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw Error(errc::parse, std::string("malformed ") + what + ": " + e.what());
    }
}

}  // namespace detail

inline Json rational_to_json(const Rational& q) { return to_string(q); }

inline Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return parse_rational(std::to_string(j.get<long long>()));
    throw Error(errc::parse, "coefficient must be an integer or a \"p/q\" string, got " + j.dump());
}

// Partitions: [3,1]; [] is the empty partition.
inline Json to_json(const Partition& p) {
    Json j = Json::array();
    for (int part : p.parts()) j.push_back(part);
    return j;
}

inline Partition partition_from_json(const Json& j) {
    if (!j.is_array()) throw Error(errc::parse, "partition must be a JSON array, got " + j.dump());
    std::vector<int> parts;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw Error(errc::parse, "partition parts must be integers: " + j.dump());
        parts.push_back(x.get<int>());
    }
    return Partition(std::move(parts));
}

inline Partition parse_partition(const std::string& text) {
    return detail::guarded("partition", [&] { return partition_from_json(Json::parse(text)); });
}

// {"terms":[{"mono":{"c.1":2,"c'.3":1},"coeff":"-3/4"}]}
inline Json to_json(const GradedPolynomial& p) {
    Json terms = Json::array();
    for (const auto& [mono, coeff] : p.terms()) {
        Json m = Json::object();
        for (const auto& [v, e] : mono.factors()) m[v.key()] = e;
        terms.push_back(Json{{"mono", m}, {"coeff", rational_to_json(coeff)}});
    }
    return Json{{"terms", terms}};
}

inline GradedPolynomial polynomial_from_json(const Json& j) {
    return detail::guarded("polynomial", [&] {
        if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array())
            throw Error(errc::parse, "polynomial must be an object with a \"terms\" array");
        GradedPolynomial p;
        for (const auto& t : j.at("terms")) {
            std::vector<Monomial::Factor> f;
            for (const auto& [key, e] : t.at("mono").items()) {
                if (!e.is_number_integer() || e.get<int>() < 0)
                    throw Error(errc::parse, "exponent of " + key + " must be a nonnegative integer");
                f.emplace_back(parse_variable(key), e.get<int>());
            }
            p.add_term(Monomial(std::move(f)), rational_from_json(t.at("coeff")));
        }
        return p;
    });
}

// {"[2,1]":"1","[3]":"2"}
inline Json to_json(const SchurExpansion& e) {
    Json j = Json::object();
    for (const auto& [lambda, coeff] : e.coeffs()) j[lambda.str()] = rational_to_json(coeff);
    return j;
}

inline SchurExpansion schur_expansion_from_json(const Json& j) {
    return detail::guarded("Schur expansion", [&] {
        if (!j.is_object()) throw Error(errc::parse, "Schur expansion must be a JSON object");
        SchurExpansion e;
        for (const auto& [key, coeff] : j.items()) e.add(parse_partition(key), rational_from_json(coeff));
        return e;
    });
}

// {"truncation":D,"rank":r|null,"components":[<poly>, ...]}
inline Json to_json(const ChernSeries& s) {
    Json comps = Json::array();
    for (const auto& g : s.components()) comps.push_back(to_json(g));
    Json j;
    j["truncation"] = s.truncation();
    j["rank"] = s.rank() ? Json(*s.rank()) : Json(nullptr);
    j["components"] = comps;
    return j;
}

inline ChernSeries chern_series_from_json(const Json& j) {
    return detail::guarded("Chern series", [&] {
        const int d = j.at("truncation").get<int>();
        std::optional<int> rank;
        if (j.contains("rank") && !j.at("rank").is_null()) rank = j.at("rank").get<int>();
        std::vector<GradedPolynomial> comps;
        for (const auto& c : j.at("components")) comps.push_back(polynomial_from_json(c));
        return ChernSeries::from_components(d, comps, rank);
    });
}

inline std::string multi_index_key(const MultiIndex& a) {
    std::string s = "[";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s + "]";
}

// {"n":2,"k":3,"d":3,"coeffs":[{"[2,0]":"1"},{"[1,1]":"1"},{"[0,2]":"1"}]}
inline Json to_json(const JetMap& psi) {
    Json coeffs = Json::array();
    for (const auto& comp : psi.components()) {
        Json c = Json::object();
        for (const auto& [a, q] : comp) c[multi_index_key(a)] = rational_to_json(q);
        coeffs.push_back(c);
    }
    Json j;
    j["n"] = psi.n();
    j["k"] = psi.k();
    j["d"] = psi.d();
    j["coeffs"] = coeffs;
    return j;
}

inline JetMap jet_from_json(const Json& j) {
    return detail::guarded("jet", [&] {
        const int n = j.at("n").get<int>();
        const int k = j.at("k").get<int>();
        const int d = j.at("d").get<int>();
        const auto& coeffs = j.at("coeffs");
        if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != k)
            throw Error(errc::parse, "jet needs exactly k coefficient objects");
        JetMap psi(n, k, d);
        for (int c = 0; c < k; ++c)
            for (const auto& [key, q] : coeffs.at(static_cast<std::size_t>(c)).items()) {
                const Json idx = Json::parse(key);
                if (!idx.is_array()) throw Error(errc::parse, "multi-index key must be an array: " + key);
                MultiIndex a;
                for (const auto& e : idx) a.push_back(e.get<int>());
                if (total_degree(a) > d)
                    throw Error(errc::invariant, "term " + key + " exceeds the jet order " + std::to_string(d));
                psi.add(c, a, rational_from_json(q));
            }
        return psi;
    });
}

inline Json to_json(const LocalAlgebraReport& r) {
    Json j;
    j["dimension"] = r.dimension;
    j["hilbert"] = r.hilbert;
    j["nilpotency_index"] = r.nilpotency_index;
    j["pairing_ranks"] = r.pairing_ranks;
    return j;
}

inline LocalAlgebraReport local_algebra_report_from_json(const Json& j) {
    return detail::guarded("local algebra report", [&] {
        LocalAlgebraReport r;
        r.dimension = j.at("dimension").get<int>();
        r.hilbert = j.at("hilbert").get<std::vector<int>>();
        r.nilpotency_index = j.at("nilpotency_index").get<int>();
        r.pairing_ranks = j.at("pairing_ranks").get<std::vector<int>>();
        return r;
    });
}

inline Json to_json(const Gf2Polynomial& p) { return to_json(p.lift()); }

// {"name":"Sigma1","l":0,"n":1,"k":1,"codim":1,"poly":{...},"source":"..."}
inline Json to_json(const CatalogueEntry& e) {
    Json j;
    j["name"] = e.name;
    j["l"] = e.l;
    j["n"] = e.n;
    j["k"] = e.k;
    j["codim"] = e.codim;
    j["poly"] = to_json(e.poly);
    j["source"] = e.source;
    return j;
}

inline CatalogueEntry catalogue_entry_from_json(const Json& j) {
    return detail::guarded("catalogue entry", [&] {
        CatalogueEntry e;
        e.name = j.at("name").get<std::string>();
        e.l = j.at("l").get<int>();
        e.n = j.at("n").get<int>();
        e.k = j.at("k").get<int>();
        e.codim = j.at("codim").get<int>();
        e.poly = polynomial_from_json(j.at("poly"));
        e.source = j.contains("source") ? j.at("source").get<std::string>() : std::string();
        validate(e);
        return e;
    });
}

inline Json to_json(const VerificationReport& r) {
    Json j;
    j["name"] = r.name;
    j["damon_ok"] = r.damon_ok;
    if (r.relative_form) j["relative_form"] = to_json(*r.relative_form);
    j["positive_ok"] = r.positive_ok;
    j["stabilization_ok"] = r.stabilization_ok;
    j["notes"] = r.notes;
    return j;
}

// JSON lines; blank lines are skipped. Errors name the 1-based line.
inline std::vector<CatalogueEntry> catalogue_read(std::istream& in) {
    std::vector<CatalogueEntry> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(catalogue_entry_from_json(detail::guarded("JSON", [&] { return Json::parse(line); })));
        } catch (const Error& e) {
            throw Error(e.kind(), "line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

inline std::vector<CatalogueEntry> catalogue_load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::parse, "cannot open catalogue '" + path + "'");
    return catalogue_read(in);
}

inline void catalogue_write(const std::vector<CatalogueEntry>& entries, std::ostream& out) {
    for (const auto& e : entries) out << to_json(e).dump() << '\n';
}

inline void catalogue_store(const std::vector<CatalogueEntry>& entries, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(errc::parse, "cannot write catalogue '" + path + "'");
    catalogue_write(entries, out);
}

}  // namespace thom::io
