#include <doctest.h>

#include "hyptree/classify.hpp"
#include "hyptree/canonical.hpp"
#include "helpers.hpp"

using namespace hyptree;
using test::cube;
using test::eqs;
using test::table;

TEST_CASE("independence: cubes are fully independent, structured pools are not") {
    auto c3 = cube(3);
    CHECK(is_independent(c3, {0, 1, 2}));
    CHECK(independence_dimension(c3).dimension == 3);

    auto grid = canonical_system(CanonicalKind::u4, 3);
    CHECK(independence_dimension(grid).dimension == 1);

    auto chain = canonical_system(CanonicalKind::u7, 6);
    auto res = independence_dimension(chain);
    CHECK(res.dimension == 1);
    CHECK(is_independent(chain, res.witness));

    auto constant = table({"1", "2"}, {{"a", {0, 0}}});
    CHECK(independence_dimension(constant).dimension == 0);
}

TEST_CASE("min_equivalent_subsystem on the cut chain") {
    auto sys = canonical_system(CanonicalKind::u7, 7);
    auto s = eqs(sys, {{"l1", 1}, {"l2", 1}, {"l3", 0}, {"l5", 0}});
    auto reduced = min_equivalent_subsystem(sys, s);
    CHECK(to_string(sys, reduced) == "{l2=1, l3=0}");

    CHECK(min_equivalent_subsystem(sys, {}).eqs.empty());
    auto single = eqs(sys, {{"l3", 1}});
    CHECK(min_equivalent_subsystem(sys, single) == single);
    CHECK_THROWS_AS(min_equivalent_subsystem(sys, eqs(sys, {{"l1", 1}, {"l1", 0}})),
                    StructureError);
}

TEST_CASE("min_inconsistent_subsystem and the bounded i-reducedness sweep") {
    auto c2 = cube(2);
    auto bad = eqs(c2, {{"f1", 0}, {"f2", 1}, {"f1", 1}});
    auto core = min_inconsistent_subsystem(c2, bad);
    CHECK(core.eqs.size() == 2);
    CHECK_THROWS_AS(min_inconsistent_subsystem(c2, eqs(c2, {{"f1", 0}})), StructureError);
    CHECK(check_r_i_reduced(c2, 2, 4).holds);

    auto points = canonical_system(CanonicalKind::u6, 4);
    CHECK(check_r_i_reduced(points, 2, 4).holds);

    auto pc = canonical_system(CanonicalKind::u3, 3);
    auto s3 = eqs(pc, {{"p1", 0}, {"p2", 0}, {"p3", 0}, {"l3", 0}});
    CHECK(min_inconsistent_subsystem(pc, s3).eqs.size() == 4);
    auto sweep = check_r_i_reduced(pc, 3, 4);
    CHECK_FALSE(sweep.holds);
    REQUIRE(sweep.violation.has_value());
    CHECK(min_inconsistent_subsystem(pc, *sweep.violation).eqs.size() > 3);
}

TEST_CASE("k_level on the reference systems") {
    auto constant = table({"1", "2"}, {{"a", {1, 1}}});
    CHECK(k_level(constant).value == 0);

    CHECK(k_level(canonical_system(CanonicalKind::u6, 5)).value == 1);
    CHECK(k_level(canonical_system(CanonicalKind::u5, 3)).value == 2);
    CHECK(k_level(canonical_system(CanonicalKind::u5, 4)).value == 2);
    CHECK(k_level(cube(3)).value == 3);

    auto r = k_level(cube(3), 2);
    CHECK(r.exceeds_cap);
}

TEST_CASE("k_level is monotone under restriction") {
    std::mt19937_64 rng(307);
    for (int trial = 0; trial < 25; ++trial) {
        auto sys = random_system(rng, 2 + rng() % 7, 1 + rng() % 4);
        KLevelCache cache(sys);
        int k = cache.level();
        for (std::size_t a = 0; a < sys.attribute_count(); ++a)
            for (int v = 0; v <= 1; ++v)
                CHECK(cache.level(sys.elements_where(a, v)) <= k);
    }
}

TEST_CASE("canonical system columns match their definitions") {
    auto chain = canonical_system(CanonicalKind::u7, 3);
    REQUIRE(chain.universe_size() == 4);
    auto l2 = *chain.attribute_index("l2");
    std::vector<int> col;
    for (std::size_t e = 0; e < 4; ++e) col.push_back(chain.value(l2, e));
    CHECK(col == std::vector<int>{0, 0, 1, 1});

    auto points = canonical_system(CanonicalKind::u6, 3);
    auto p2 = *points.attribute_index("p2");
    col.clear();
    for (std::size_t e = 0; e < 4; ++e) col.push_back(points.value(p2, e));
    CHECK(col == std::vector<int>{0, 1, 0, 0});

    auto stairs = canonical_system(CanonicalKind::u5, 2);
    REQUIRE(stairs.universe_size() == 3);
    CHECK(stairs.element_id(0) == "1_1");
    CHECK(stairs.element_id(1) == "2_1");
    CHECK(stairs.element_id(2) == "2_2");
    auto f2 = *stairs.attribute_index("f2");
    col.clear();
    for (std::size_t e = 0; e < 3; ++e) col.push_back(stairs.value(f2, e));
    CHECK(col == std::vector<int>{0, 1, 1});

    CHECK(cube(2).universe_size() == 4);
    CHECK(canonical_system(CanonicalKind::u1, 3).attribute_count() == 8);
    CHECK(canonical_system(CanonicalKind::u4, 2).universe_size() == 9);
    CHECK_THROWS_AS(canonical_system(CanonicalKind::u1, 5), BudgetError);
    CHECK_THROWS_AS(canonical_system(CanonicalKind::u2, 13), BudgetError);
}

TEST_CASE("certificates carry the exact largest minimal inconsistent size") {
    CHECK(certify_i_reduced(canonical_system(CanonicalKind::u6, 4)).r == 2);
    CHECK(certify_i_reduced(canonical_system(CanonicalKind::u7, 7)).r == 2);
    CHECK(certify_i_reduced(cube(3)).r == 2);
    CHECK(certify_i_reduced(canonical_system(CanonicalKind::u4, 2)).r == 2);

    auto pc = canonical_system(CanonicalKind::u3, 3);
    auto cert = certify_i_reduced(pc);
    CHECK(cert.r == 4);  // S_3 has size 4
    REQUIRE_FALSE(cert.witnesses.empty());
    CHECK(cert.witnesses.front().eqs.size() == 4);
    for (const auto& w : cert.witnesses) {
        CHECK_FALSE(is_consistent(pc, w));
        CHECK(min_inconsistent_subsystem(pc, w).eqs.size() == w.eqs.size());
    }
}

TEST_CASE("certificate enumeration agrees with the bounded sweep") {
    std::mt19937_64 rng(311);
    for (int trial = 0; trial < 20; ++trial) {
        auto sys = random_system(rng, 1 + rng() % 6, 1 + rng() % 3);
        auto cert = certify_i_reduced(sys);
        auto sweep = check_r_i_reduced(sys, cert.r, static_cast<int>(sys.universe_size()) + 1);
        CHECK(sweep.holds);
        if (cert.r > 1) {
            auto tight = check_r_i_reduced(sys, cert.r - 1,
                                           static_cast<int>(sys.universe_size()) + 1);
            CHECK_FALSE(tight.holds);
        }
    }
}

TEST_CASE("r-reduced implies (r+1)-i-reduced at matching caps") {
    std::mt19937_64 rng(313);
    for (int trial = 0; trial < 20; ++trial) {
        auto sys = random_system(rng, 1 + rng() % 6, 1 + rng() % 3);
        int cap = 3;
        auto red = check_r_reduced(sys, 1, cap);
        int r = red.min_r_at_cap;  // the system is r-reduced at this cap
        auto ired = check_r_i_reduced(sys, r + 1, cap);
        CHECK(ired.holds);
    }
}

TEST_CASE("sauer inequality holds on reference systems and random tables") {
    auto chain = canonical_system(CanonicalKind::u7, 7);
    Problem zc = Problem::all_attributes(chain);
    CHECK(solution_set(chain, zc).size() == 8);
    CHECK(sauer_bound_check(chain, zc, 1));

    auto c2 = cube(2);
    CHECK(sauer_bound_check(c2, Problem::all_attributes(c2), 2));

    std::mt19937_64 rng(317);
    for (int trial = 0; trial < 40; ++trial) {
        auto sys = random_system(rng, 1 + rng() % 10, 1 + rng() % 5);
        int i = independence_dimension(sys).dimension;
        CHECK(sauer_bound_check(sys, Problem::all_attributes(sys), i));
    }
}

TEST_CASE("classification reports match the seven reference rows") {
    const char* expected[] = {"V1", "V2", "V3", "V4", "V5", "V6", "V7"};
    const CanonicalKind kinds[] = {CanonicalKind::u1, CanonicalKind::u2, CanonicalKind::u3,
                                   CanonicalKind::u4, CanonicalKind::u5, CanonicalKind::u6,
                                   CanonicalKind::u7};
    for (int i = 0; i < 7; ++i) {
        int n = recommended_witness_size(kinds[i]);
        auto sys = canonical_system(kinds[i], n);
        auto rep = classify_system(sys, to_string(kinds[i]));
        CHECK_MESSAGE(rep.eind.matched_class == expected[i],
                      to_string(kinds[i]) << "(" << n << ") classified as "
                                          << rep.eind.matched_class);
    }
}

TEST_CASE("classification report serializes with stable keys") {
    auto sys = canonical_system(CanonicalKind::u6, 3);
    auto rep = classify_system(sys, "u6(3)");
    auto j = to_json(rep);
    CHECK(j.begin().key() == "label");
    CHECK(j["independence"]["dimension"] == 1);
    CHECK(j["k_level"]["value"] == 1);
    CHECK(j["eind_estimate"]["class"] == "V6");
    CHECK(to_json(rep).dump() == j.dump());
    CHECK(summary(rep).find("class=V6") != std::string::npos);
}

TEST_CASE("lemma witness bundles pass for all seven systems") {
    for (auto kind : {CanonicalKind::u1, CanonicalKind::u2, CanonicalKind::u3,
                      CanonicalKind::u4, CanonicalKind::u5, CanonicalKind::u6,
                      CanonicalKind::u7}) {
        auto rep = lemma_witnesses(kind, recommended_witness_size(kind));
        for (const auto& check : rep.checks)
            CHECK_MESSAGE(check.ok, to_string(kind) << ": " << check.name << " "
                                                    << check.detail);
    }
}

TEST_CASE("budget exhaustion raises") {
    auto sys = cube(3);
    Budget tiny(5);
    CHECK_THROWS_AS(check_r_i_reduced(sys, 2, 4, &tiny), BudgetError);
}
