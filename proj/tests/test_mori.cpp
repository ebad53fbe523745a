// Cone-of-curves machinery: effectiveness, contractibility, projectivity,
// extremality, decomposition into contractibles and the order-3 degree-2
// classifier, with the LP checked against the brute-force facet oracle.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "torfan/catalog.hpp"
#include "torfan/mori.hpp"

using namespace torfan;

namespace {

Fan cfan(const std::string& name) { return catalog(name).fan; }

RelationClass class_of(const Fan& fan, const PrimitiveCollection& p) {
    return relation_class(fan, primitive_relation(fan, p));
}

// Complete smooth non-projective 3-fold: P3 with the three edges through e1
// subdivided and the resulting triangle of walls twisted.
Fan non_projective_threefold() {
    Fan f;
    f.dim = 3;
    f.rays = {{1, 0, 0}, {0, 1, 0},  {0, 0, 1}, {-1, -1, -1},
              {1, 1, 0}, {1, 0, 1},  {0, -1, -1}};
    f.max_cones = {{0, 4, 5}, {0, 4, 6}, {0, 5, 6}, {1, 2, 3}, {1, 2, 4},
                   {1, 3, 6}, {1, 4, 6}, {2, 3, 5}, {2, 4, 5}, {3, 5, 6}};
    return f;
}

}  // namespace

TEST_CASE("effectiveness criterion: negative support must span a cone") {
    Fan s1 = cfan("S1");
    CHECK(effective_by_criterion(s1, class_of(s1, {0, 1})));

    Fan p2 = cfan("P2");
    CHECK(effective_by_criterion(p2, class_of(p2, {0, 1, 2})));

    // negative of the exceptional class: negative support {e1,e2} spans no
    // cone of S1, so the criterion is inconclusive
    RelationClass neg = class_of(s1, {0, 1});
    for (auto& e : neg.entries) e = -e;
    neg.degree = -neg.degree;
    CHECK_FALSE(effective_by_criterion(s1, neg));
}

TEST_CASE("contractibility") {
    CHECK(is_contractible(cfan("S1"), {0, 1}));
    CHECK(is_contractible(cfan("P2"), {0, 1, 2}));
    // in the two-step point blow-up of P4 the long relation
    // y1+y2+y3+y4 = x1 fails Reid's wall condition
    CHECK_FALSE(is_contractible(cfan("subdiv-14"), {0, 1, 2, 3}));
}

TEST_CASE("projectivity by exact LP") {
    CHECK(is_projective(cfan("P4")));
    for (const auto& name : catalog_names()) {
        auto entry = catalog(name);
        if (!entry.fano) continue;
        CAPTURE(name);
        CHECK(is_projective(entry.fan));
    }
    Fan np = non_projective_threefold();
    REQUIRE(validate(np).ok());
    CHECK_FALSE(is_projective(np));
}

TEST_CASE("non-projective input is refused where NE generation is needed") {
    Fan np = non_projective_threefold();
    auto c = class_of(np, primitive_collections(np)[0]);
    CHECK_THROWS_AS(is_extremal(np, c), FanError);
    CHECK_THROWS_AS(decompose_into_contractibles(np, c), FanError);
}

TEST_CASE("degree-1 classes are extremal, symmetric zero classes are not") {
    CHECK(is_extremal(cfan("P2"), class_of(cfan("P2"), {0, 1, 2})));

    for (const std::string& name : {"S1", "S3", "F", "V4", "P2xP2"}) {
        Fan fan = cfan(name);
        CAPTURE(name);
        for (const auto& r : primitive_relations(fan))
            if (r.degree == 1) CHECK(is_extremal(fan, relation_class(fan, r)));
    }

    // on the hexagon, e1 + (-e1) = 0 splits off two degree-1 classes
    Fan s3 = cfan("S3");
    CHECK_FALSE(is_extremal(s3, class_of(s3, {0, 4})));
    auto a = class_of(s3, {0, 1});
    auto b = class_of(s3, {3, 4});
    auto zero = class_of(s3, {0, 4});
    for (size_t i = 0; i < zero.entries.size(); ++i)
        CHECK(a.entries[i] + b.entries[i] == zero.entries[i]);
}

TEST_CASE("LP membership agrees with the brute-force facet oracle") {
    for (const auto& name : catalog_names()) {
        Fan fan = cfan(name);
        if (fan.dim > 4) continue;
        CAPTURE(name);
        auto rels = primitive_relations(fan);
        std::vector<RatVec> gens;
        for (const auto& r : rels) {
            auto c = relation_class(fan, r);
            RatVec v;
            for (const Int& e : c.entries) v.push_back(Rat(e));
            gens.push_back(v);
        }
        for (const auto& r : rels) {
            auto c = relation_class(fan, r);
            RatVec target, neg;
            for (const Int& e : c.entries) {
                target.push_back(Rat(e));
                neg.push_back(Rat(-e));
            }
            CHECK(nonneg_combination(gens, target).has_value() ==
                  cone_contains_bruteforce(gens, target));
            RelationClass minus = c;
            for (auto& e : minus.entries) e = -e;
            minus.degree = -minus.degree;
            CHECK(is_effective(fan, minus) ==
                  cone_contains_bruteforce(gens, neg));
        }
    }
}

TEST_CASE("decompose_into_contractibles") {
    Fan s1 = cfan("S1");
    auto single = decompose_into_contractibles(s1, class_of(s1, {0, 1}));
    REQUIRE(single.has_value());
    REQUIRE(single->terms.size() == 1);
    CHECK(single->terms[0].second == 1);
    CHECK(single->terms[0].first.entries == class_of(s1, {0, 1}).entries);

    Fan s3 = cfan("S3");
    auto zero = class_of(s3, {0, 4});
    auto dec = decompose_into_contractibles(s3, zero);
    REQUIRE(dec.has_value());
    std::vector<Int> sum(zero.entries.size(), 0);
    Int nterms = 0;
    for (const auto& [cls, mult] : dec->terms) {
        CHECK(mult >= 1);
        CHECK(cls.degree == 1);
        nterms += mult;
        for (size_t i = 0; i < sum.size(); ++i)
            sum[i] += mult * cls.entries[i];
    }
    CHECK(nterms == 2);
    CHECK(sum == zero.entries);

    // y1+...+y4 = x1 on the two-step point blow-up of P4 decomposes as
    // (x1 + y1 = x2) + (x2 + y2 + y3 + y4 = 2 x1)
    Fan t14 = cfan("subdiv-14");
    auto target = class_of(t14, {0, 1, 2, 3});
    auto dec14 = decompose_into_contractibles(t14, target);
    REQUIRE(dec14.has_value());
    auto rels14 = primitive_relations(t14);
    std::vector<Int> sum14(target.entries.size(), 0);
    for (const auto& [cls, mult] : dec14->terms) {
        bool contractible_term = false;
        for (const auto& r : rels14)
            if (relation_class(t14, r).entries == cls.entries)
                contractible_term = is_contractible(t14, r.collection);
        CHECK(contractible_term);
        for (size_t i = 0; i < sum14.size(); ++i)
            sum14[i] += mult * cls.entries[i];
    }
    CHECK(sum14 == target.entries);
    CHECK(dec14->terms.size() == 2);
}

TEST_CASE("order-3 degree-2 classifier on the P4 cone subdivisions") {
    // type 3: single plane blow-up, y1+y2+y3 = x1 is contractible
    auto rep3 = classify_degree2_decomposition(cfan("subdiv-3"), {0, 1, 2});
    CHECK(rep3.kind == Degree2Kind::contractible);
    CHECK(rep3.witnesses.empty());

    // type 6: y1 + x1 = x2 and y2+y3+x2 = 2 x1
    auto rep6 = classify_degree2_decomposition(cfan("subdiv-6"), {0, 1, 2});
    CHECK(rep6.kind == Degree2Kind::A);
    REQUIRE(rep6.witnesses.size() == 2);
    for (const auto& w : rep6.witnesses) CHECK(w.degree == 1);

    // type 7: splits through y1 + y4 = x2
    auto rep7 = classify_degree2_decomposition(cfan("subdiv-7"), {0, 1, 2});
    CHECK(rep7.kind == Degree2Kind::B);
    REQUIRE(rep7.witnesses.size() == 2);

    // the two witness classes sum to the relation class in all split cases
    for (const std::string& name : {"subdiv-6", "subdiv-7"}) {
        Fan fan = cfan(name);
        auto rep = classify_degree2_decomposition(fan, {0, 1, 2});
        auto total = class_of(fan, {0, 1, 2});
        std::vector<Int> sum(total.entries.size(), 0);
        for (const auto& w : rep.witnesses) {
            auto c = relation_class(fan, w);
            for (size_t i = 0; i < sum.size(); ++i) sum[i] += c.entries[i];
        }
        CAPTURE(name);
        CHECK(sum == total.entries);
    }
}
