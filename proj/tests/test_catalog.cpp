// Catalog recomputation, lattice isomorphism, the dimension-2 enumeration
// and JSON round trips.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "torfan/catalog.hpp"
#include "torfan/io.hpp"
#include "torfan/primitive.hpp"

using namespace torfan;

namespace {

Fan cfan(const std::string& name) { return catalog(name).fan; }

Fan transformed(const Fan& fan, const IntMat& m) {
    Fan out = fan;
    for (auto& r : out.rays) r = mat_apply(m, r);
    return out;
}

}  // namespace

TEST_CASE("every entry recomputes to its own record") {
    for (const auto& name : catalog_names()) {
        auto entry = catalog(name);
        CAPTURE(name);
        CHECK(entry.name == name);
        CHECK(entry.picard == picard_number(entry.fan));
        CHECK(entry.fano == is_fano(entry.fan));
    }
    CHECK_THROWS_AS(catalog("no-such-fan"), InputError);
}

TEST_CASE("expected invariants of the named entries") {
    struct Row { const char* name; int dim; int picard; bool fano; };
    for (auto [name, dim, picard, fano] :
         {Row{"P2", 2, 1, true}, Row{"S3", 2, 4, true}, Row{"F", 3, 5, true},
          Row{"PP(O+O+O(1))/P1", 3, 2, true}, Row{"V4", 4, 6, true},
          Row{"Vtilde4", 4, 5, true}, Row{"S3xS3xP1", 5, 9, true},
          Row{"S3xF", 5, 9, true}}) {
        auto entry = catalog(name);
        CAPTURE(name);
        CHECK(entry.fan.dim == dim);
        CHECK(entry.picard == picard);
        CHECK(entry.fano == fano);
    }
}

TEST_CASE("lattice isomorphism is reflexive and symmetric") {
    for (const std::string& name : {"P2", "S2", "F", "V4"}) {
        Fan fan = cfan(name);
        CAPTURE(name);
        CHECK(lattice_isomorphic(fan, fan));
    }

    Fan p2 = cfan("P2");
    Fan perm;
    perm.dim = 2;
    perm.rays = {p2.rays[1], p2.rays[2], p2.rays[0]};
    perm.max_cones = {{0, 1}, {0, 2}, {1, 2}};
    CHECK(lattice_isomorphic(p2, perm));
    CHECK(lattice_isomorphic(perm, p2));

    CHECK_FALSE(lattice_isomorphic(cfan("S1"), cfan("S2")));
    CHECK_FALSE(lattice_isomorphic(cfan("S1"), cfan("P1xP1")));
    CHECK_FALSE(lattice_isomorphic(cfan("V4"), cfan("Vtilde4")));
}

TEST_CASE("coordinate changes are detected with a witness") {
    Fan f = cfan("F");
    IntMat m = {{1, 1, 0}, {0, 1, 0}, {1, 0, 1}};  // det 1
    Fan g = transformed(f, m);
    REQUIRE(validate(g).ok());
    IntMat witness;
    REQUIRE(lattice_isomorphic(f, g, &witness));
    // the witness carries every ray of f to a ray of g
    for (const auto& r : f.rays) {
        LatticePoint image = mat_apply(witness, r);
        bool hit = false;
        for (const auto& s : g.rays) hit = hit || s == image;
        CHECK(hit);
    }

    // transitivity spot check through a second transformation
    IntMat m2 = {{1, 0, 0}, {2, 1, 0}, {0, 0, 1}};
    Fan h = transformed(g, m2);
    CHECK(lattice_isomorphic(f, g));
    CHECK(lattice_isomorphic(g, h));
    CHECK(lattice_isomorphic(f, h));
}

TEST_CASE("dimension-2 enumeration finds the five del Pezzo classes") {
    auto classes = enumerate_smooth_fano(2);
    REQUIRE(classes.size() == 5);
    std::vector<std::string> expected = {"P2", "P1xP1", "S1", "S2", "S3"};
    std::vector<bool> seen(expected.size(), false);
    for (const auto& entry : classes) {
        CHECK(entry.fano);
        CHECK(entry.picard <= 4);
        int matches = 0;
        for (size_t i = 0; i < expected.size(); ++i) {
            if (lattice_isomorphic(entry.fan, cfan(expected[i]))) {
                ++matches;
                seen[i] = true;
            }
        }
        CHECK(matches == 1);
    }
    for (bool s : seen) CHECK(s);

    // count stable under a larger coordinate box
    CHECK(enumerate_smooth_fano(2, 4).size() == 5);

    CHECK_THROWS_AS(enumerate_smooth_fano(7), InputError);
}

TEST_CASE("JSON round trip over the catalog") {
    for (const auto& name : catalog_names()) {
        Fan fan = cfan(name);
        CAPTURE(name);
        Fan again = parse_fan_text(serialize_fan_text(fan));
        CHECK(again.dim == fan.dim);
        CHECK(again.rays == fan.rays);
        CHECK(again.max_cones == fan.max_cones);
    }
}

TEST_CASE("parser rejections") {
    CHECK_THROWS_AS(
        parse_fan_text(R"({"dim":2,"rays":[[1,0],[0,1],[-1,-1]],)"
                       R"("max_cones":[[0,1],[1,2],[0,2]],"extra":1})"),
        InputError);

    CHECK_THROWS_WITH_AS(
        parse_fan_text(R"({"dim":2,"rays":[[1,0],[0,1],[-1,-1]]})"),
        doctest::Contains("max_cones"), InputError);

    CHECK_THROWS_WITH_AS(
        parse_fan_text(R"({"dim":2,"rays":[[2,2],[0,1],[-1,-1]],)"
                       R"("max_cones":[[0,1],[1,2],[0,2]]})"),
        doctest::Contains("primitive"), InputError);

    CHECK_THROWS_AS(parse_fan_text("not json at all"), InputError);
}

TEST_CASE("coordinates beyond int64 travel as decimal strings") {
    Fan f;
    f.dim = 1;
    Int big("123456789012345678901234567890123456789");
    f.rays = {{Int(1)}, {Int(-1)}};
    f.max_cones = {{0}, {1}};
    std::string text = serialize_fan_text(f);
    Fan back = parse_fan_text(text);
    CHECK(back.rays == f.rays);

    std::string big_text =
        R"({"dim":2,"rays":[[1,0],["123456789012345678901234567890123456789",1],[-1,-1]],)"
        R"("max_cones":[[0,1],[1,2],[0,2]]})";
    Fan parsed = parse_fan_text(big_text);
    CHECK(parsed.rays[1][0] == big);
    Fan reparsed = parse_fan_text(serialize_fan_text(parsed));
    CHECK(reparsed.rays == parsed.rays);
}

TEST_CASE("TORFAN_CATALOG_DIR overrides a built-in entry") {
    std::string dir = "override_fixture_dir";
    std::string path = dir + "/P2.json";
    std::remove(path.c_str());
    CHECK(std::system(("mkdir -p " + dir).c_str()) == 0);
    serialize_fan(cfan("P1xP1"), path);

    ::setenv("TORFAN_CATALOG_DIR", dir.c_str(), 1);
    auto entry = catalog("P2");
    ::unsetenv("TORFAN_CATALOG_DIR");

    CHECK(same_fan(entry.fan, cfan("P1xP1")));
    CHECK(entry.picard == 2);
    std::remove(path.c_str());
}
