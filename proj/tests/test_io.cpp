#include <gtest/gtest.h>

#include <cstdio>
#include <sstream>

#include "thom/io.hpp"

using namespace thom;
using io::Json;

namespace {
GradedPolynomial c(int i) { return var(fam::c, i); }
GradedPolynomial cp(int i) { return var(fam::cprime, i); }
}  // namespace

TEST(Io, PolynomialFormat) {
    const GradedPolynomial p = GradedPolynomial(Rational(-3, 4)) * c(1) * c(1) * cp(3);
    EXPECT_EQ(io::to_json(p).dump(), R"({"terms":[{"mono":{"c.1":2,"c'.3":1},"coeff":"-3/4"}]})");
    EXPECT_EQ(io::polynomial_from_json(io::to_json(p)), p);
    EXPECT_EQ(io::polynomial_from_json(Json::parse(R"({"terms":[{"mono":{"c.1":1},"coeff":2}]})")), 2 * c(1));
    EXPECT_EQ(io::to_json(GradedPolynomial()).dump(), R"({"terms":[]})");
}

TEST(Io, PolynomialRejectsGarbage) {
    EXPECT_THROW(io::polynomial_from_json(Json::parse(R"({"terms":[{"mono":{"c.1":1},"coeff":"0.5"}]})")), Error);
    EXPECT_THROW(io::polynomial_from_json(Json::parse(R"({"terms":[{"mono":{"c.1":-1},"coeff":"1"}]})")), Error);
    EXPECT_THROW(io::polynomial_from_json(Json::parse(R"({"terms":[{"coeff":"1"}]})")), Error);
    EXPECT_THROW(io::polynomial_from_json(Json::parse("[1]")), Error);
}

TEST(Io, PartitionAndSchurFormats) {
    EXPECT_EQ(io::to_json(Partition({3, 1})).dump(), "[3,1]");
    EXPECT_EQ(io::to_json(Partition()).dump(), "[]");
    EXPECT_THROW(io::parse_partition("[1,2]"), Error);
    const SchurExpansion e{{Partition({2, 1}), 1}, {Partition({3}), 2}};
    EXPECT_EQ(io::to_json(e).dump(), R"({"[3]":"2","[2,1]":"1"})");
    EXPECT_EQ(io::schur_expansion_from_json(io::to_json(e)), e);
}

TEST(Io, ChernSeriesFormat) {
    const auto s = ChernSeries::symbolic(fam::c, 2, 1);
    const auto j = io::to_json(s);
    EXPECT_EQ(j.dump(),
              R"({"truncation":2,"rank":1,"components":[{"terms":[{"mono":{},"coeff":"1"}]},{"terms":[{"mono":{"c.1":1},"coeff":"1"}]},{"terms":[]}]})");
    const auto back = io::chern_series_from_json(j);
    EXPECT_EQ(back, s);
    EXPECT_EQ(back.rank(), std::optional<int>(1));
    EXPECT_EQ(io::chern_series_from_json(io::to_json(ChernSeries(1))).rank(), std::nullopt);
}

TEST(Io, JetFormat) {
    JetMap psi(2, 3, 3);
    psi.add(0, {2, 0}, 1);
    psi.add(1, {1, 1}, 1);
    psi.add(2, {0, 2}, 1);
    const auto j = io::to_json(psi);
    EXPECT_EQ(j.dump(), R"({"n":2,"k":3,"d":3,"coeffs":[{"[2,0]":"1"},{"[1,1]":"1"},{"[0,2]":"1"}]})");
    EXPECT_EQ(io::jet_from_json(j), psi);
    EXPECT_THROW(io::jet_from_json(Json::parse(R"({"n":1,"k":1,"d":2,"coeffs":[{"[3]":"1"}]})")), Error);
    EXPECT_THROW(io::jet_from_json(Json::parse(R"({"n":1,"k":2,"d":2,"coeffs":[{"[1]":"1"}]})")), Error);
    EXPECT_THROW(io::jet_from_json(Json::parse(R"({"n":1,"k":1,"d":2,"coeffs":[{"[0]":"1"}]})")), Error);
}

TEST(Io, LocalAlgebraReportRoundTrip) {
    const LocalAlgebraReport r{3, {2, 1, 0}, 3, {2}};
    EXPECT_EQ(io::to_json(r).dump(), R"({"dimension":3,"hilbert":[2,1,0],"nilpotency_index":3,"pairing_ranks":[2]})");
    EXPECT_EQ(io::local_algebra_report_from_json(io::to_json(r)), r);
}

TEST(Io, CatalogueRoundTrip) {
    std::vector<CatalogueEntry> cat;
    for (int k = 1; k <= 4; ++k) cat.push_back(sigma1_oracle(k, k));
    const std::string path = testing::TempDir() + "thom_catalogue_roundtrip.jsonl";
    io::catalogue_store(cat, path);
    EXPECT_EQ(io::catalogue_load(path), cat);
    std::remove(path.c_str());
}

TEST(Io, CatalogueEmptyAndBlankLines) {
    std::istringstream empty("");
    EXPECT_TRUE(io::catalogue_read(empty).empty());
    std::ostringstream out;
    io::catalogue_write({sigma1_oracle(1, 1)}, out);
    std::istringstream padded("\n" + out.str() + "\n  \n");
    EXPECT_EQ(io::catalogue_read(padded).size(), 1u);
}

TEST(Io, CatalogueErrorsNameTheLine) {
    std::ostringstream good;
    io::catalogue_write({sigma1_oracle(1, 1)}, good);
    // Degree 1 polynomial declared with codim 2.
    std::string bad = good.str();
    bad.replace(bad.find("\"codim\":1"), 9, "\"codim\":2");
    std::istringstream in(good.str() + bad);
    try {
        io::catalogue_read(in);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), errc::invariant);
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
    std::istringstream garbage("{not json\n");
    try {
        io::catalogue_read(garbage);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), errc::parse);
        EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
    }
}

TEST(Io, ReportFormat) {
    VerificationReport r;
    r.name = "Sigma1";
    r.damon_ok = true;
    r.relative_form = SchurExpansion{{Partition({1}), 1}};
    r.positive_ok = true;
    r.stabilization_ok = true;
    EXPECT_EQ(io::to_json(r).dump(),
              R"({"name":"Sigma1","damon_ok":true,"relative_form":{"[1]":"1"},"positive_ok":true,"stabilization_ok":true,"notes":[]})");
}
