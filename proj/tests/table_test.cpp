#include <doctest.h>

#include <sstream>

#include "hyptree/io.hpp"
#include "hyptree/solver.hpp"
#include "hyptree/table.hpp"
#include "helpers.hpp"

using namespace hyptree;
using test::cube;
using test::eqs;
using test::table;

TEST_CASE("tuple encoding is lexicographic, coordinate 1 leading") {
    Tuple t = Tuple::parse("011");
    CHECK(t.get(1) == 0);
    CHECK(t.get(2) == 1);
    CHECK(t.get(3) == 1);
    CHECK(t.str() == "011");
    CHECK(t.with(1, 1).str() == "111");
    CHECK(Tuple::parse("10") > Tuple::parse("01"));
}

TEST_CASE("solution_set reads off the distinct projected rows") {
    auto sys = table({"1", "2", "3"}, {{"f1", {0, 1, 1}}, {"f2", {0, 0, 1}}});
    Problem z = Problem::all_attributes(sys);
    TupleSet d = solution_set(sys, z);
    REQUIRE(d.size() == 3);
    CHECK(d.contains(Tuple::parse("00")));
    CHECK(d.contains(Tuple::parse("10")));
    CHECK(d.contains(Tuple::parse("11")));
}

TEST_CASE("solution_set of a constant attribute is a singleton") {
    auto sys = table({"1", "2"}, {{"f1", {0, 0}}});
    TupleSet d = solution_set(sys, Problem::all_attributes(sys));
    REQUIRE(d.size() == 1);
    CHECK(d.at(0) == Tuple::parse("0"));
}

TEST_CASE("full cube realizes every pair") {
    auto sys = cube(2);
    TupleSet d = solution_set(sys, Problem::all_attributes(sys));
    CHECK(d.size() == 4);
}

TEST_CASE("restrict filters one coordinate") {
    TupleSet d(2, {Tuple::parse("00").bits, Tuple::parse("10").bits, Tuple::parse("11").bits});
    TupleSet r1 = restrict(d, 1, 1);
    CHECK(r1.size() == 2);
    CHECK(r1.contains(Tuple::parse("10")));
    CHECK(r1.contains(Tuple::parse("11")));
    TupleSet r2 = restrict(d, 2, 1);
    REQUIRE(r2.size() == 1);
    CHECK(r2.at(0) == Tuple::parse("11"));
    CHECK(restrict(restrict(d, 1, 0), 1, 1).empty());
    CHECK_THROWS_AS(restrict(d, 3, 0), StructureError);
}

TEST_CASE("restrict partitions any tuple set") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        auto sys = random_system(rng, 1 + rng() % 8, 1 + rng() % 4);
        TupleSet d = solution_set(sys, Problem::all_attributes(sys));
        for (int i = 1; i <= d.width(); ++i) {
            TupleSet a = restrict(d, i, 0), b = restrict(d, i, 1);
            CHECK(a.size() + b.size() == d.size());
            for (std::size_t k = 0; k < a.size(); ++k) CHECK_FALSE(b.contains(a.at(k)));
        }
    }
}

TEST_CASE("empty equation system solves to the whole universe") {
    auto sys = cube(2);
    CHECK(is_consistent(sys, {}));
    CHECK(solutions(sys, {}).count() == sys.universe_size());
}

TEST_CASE("contradictory pair is inconsistent on the cube") {
    auto sys = cube(2);
    CHECK_FALSE(is_consistent(sys, eqs(sys, {{"f1", 0}, {"f1", 1}})));
}

TEST_CASE("point/cut system: S_3 inconsistent, proper subsystems consistent") {
    auto sys = canonical_system(CanonicalKind::u3, 3);
    auto s3 = eqs(sys, {{"p1", 0}, {"p2", 0}, {"p3", 0}, {"l3", 0}});
    CHECK_FALSE(is_consistent(sys, s3));
    for (std::size_t drop = 0; drop < s3.eqs.size(); ++drop) {
        EquationSystem sub;
        for (std::size_t i = 0; i < s3.eqs.size(); ++i)
            if (i != drop) sub.eqs.push_back(s3.eqs[i]);
        CHECK(is_consistent(sys, sub));
    }
}

TEST_CASE("consistency matches tuple membership in the solution set") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto sys = random_system(rng, 1 + rng() % 8, 1 + rng() % 4);
        Problem z = Problem::all_attributes(sys);
        TupleSet d = solution_set(sys, z);
        Tuple probe{z.dim(), rng() & ((std::uint64_t{1} << z.dim()) - 1)};
        EquationSystem s;
        for (int i = 1; i <= z.dim(); ++i)
            s.eqs.push_back(Equation{z.attrs[static_cast<std::size_t>(i - 1)], probe.get(i)});
        CHECK(is_consistent(sys, s) == d.contains(probe));
    }
}

TEST_CASE("duplicating an element changes nothing downstream") {
    auto sys = table({"1", "2", "3"}, {{"a", {0, 1, 1}}, {"b", {1, 1, 0}}});
    auto dup = table({"1", "2", "3", "3bis"}, {{"a", {0, 1, 1, 1}}, {"b", {1, 1, 0, 0}}});
    Problem z1 = Problem::all_attributes(sys);
    Problem z2 = Problem::all_attributes(dup);
    CHECK(solution_set(sys, z1) == solution_set(dup, z2));
    for (auto m : {QueryModel::m1, QueryModel::m2, QueryModel::m3, QueryModel::m4,
                   QueryModel::m5})
        CHECK(min_depth(sys, z1, m).depth == min_depth(dup, z2, m).depth);
}

TEST_CASE("table invariants are enforced") {
    CHECK_THROWS_AS(table({}, {{"a", {}}}), StructureError);
    CHECK_THROWS_AS(table({"1"}, {}), StructureError);
    CHECK_THROWS_AS(table({"1", "2"}, {{"a", {0}}}), StructureError);
    CHECK_THROWS_AS(table({"1", "2"}, {{"a", {0, 2}}}), StructureError);
    CHECK_THROWS_AS(table({"1", "2"}, {{"a", {0, 1}}, {"a", {1, 0}}}), StructureError);
    CHECK_THROWS_AS(table({"1", "1"}, {{"a", {0, 1}}}), StructureError);
}

TEST_CASE("problems validate their indices and allow repeats") {
    auto sys = cube(2);
    CHECK_THROWS_AS(Problem(sys, {}), StructureError);
    CHECK_THROWS_AS(Problem(sys, {5}), StructureError);
    Problem z(sys, {0, 0, 1});
    CHECK(z.dim() == 3);
    TupleSet d = solution_set(sys, z);
    CHECK(d.size() == 4);  // duplicated coordinate adds no new rows
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(d.at(i).get(1) == d.at(i).get(2));
}

TEST_CASE("csv round trip") {
    auto sys = canonical_system(CanonicalKind::u7, 3);
    std::string text = to_csv(sys);
    std::istringstream in(text);
    auto back = read_csv(in);
    CHECK(to_csv(back) == text);
    CHECK(text.substr(0, text.find('\n')) == "element,l1,l2,l3");
}

TEST_CASE("csv parse errors") {
    auto parse = [](const std::string& s) {
        std::istringstream in(s);
        return read_csv(in);
    };
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("id,a\n1,0\n"), ParseError);           // bad header
    CHECK_THROWS_AS(parse("element,a\n1,0,1\n"), ParseError);    // ragged row
    CHECK_THROWS_AS(parse("element,a\n1,2\n"), ParseError);      // non-binary
    CHECK_THROWS_AS(parse("element,a,a\n1,0,1\n"), ParseError);  // dup names
    CHECK_THROWS_AS(parse("element,a\n"), ParseError);           // empty universe
}
