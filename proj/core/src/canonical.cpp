#include "hyptree/canonical.hpp"

#include <cmath>

#include "hyptree/errors.hpp"
#include "hyptree/strategies.hpp"

namespace hyptree {

const char* to_string(CanonicalKind kind) {
    switch (kind) {
        case CanonicalKind::u1: return "u1";
        case CanonicalKind::u2: return "u2";
        case CanonicalKind::u3: return "u3";
        case CanonicalKind::u4: return "u4";
        case CanonicalKind::u5: return "u5";
        case CanonicalKind::u6: return "u6";
        case CanonicalKind::u7: return "u7";
    }
    return "?";
}

CanonicalKind canonical_kind_from_string(const std::string& s) {
    if (s == "u1") return CanonicalKind::u1;
    if (s == "u2") return CanonicalKind::u2;
    if (s == "u3") return CanonicalKind::u3;
    if (s == "u4") return CanonicalKind::u4;
    if (s == "u5") return CanonicalKind::u5;
    if (s == "u6") return CanonicalKind::u6;
    if (s == "u7") return CanonicalKind::u7;
    throw ParseError("unknown canonical system: " + s);
}

namespace {

using Columns = std::vector<std::pair<std::string, std::vector<int>>>;

std::vector<std::string> range_ids(int count) {
    std::vector<std::string> ids;
    for (int j = 1; j <= count; ++j) ids.push_back(std::to_string(j));
    return ids;
}

InformationSystem make_u1(int n) {
    if (n < 1 || n > 4)
        throw BudgetError("u1 instantiates all 2^n columns; supported for n <= 4");
    Columns cols;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        std::vector<int> col(static_cast<std::size_t>(n));
        for (int j = 1; j <= n; ++j)
            col[static_cast<std::size_t>(j - 1)] = static_cast<int>((v >> (n - j)) & 1);
        cols.emplace_back("g" + std::to_string(v), std::move(col));
    }
    return InformationSystem(range_ids(n), std::move(cols));
}

InformationSystem make_u2(int n) {
    if (n < 1 || n > 12)
        throw BudgetError("u2 instantiates all 2^n elements; supported for n <= 12");
    std::vector<std::string> ids;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) ids.push_back(Tuple{n, v}.str());
    Columns cols;
    for (int i = 1; i <= n; ++i) {
        std::vector<int> col;
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v)
            col.push_back(static_cast<int>((v >> (n - i)) & 1));
        cols.emplace_back("f" + std::to_string(i), std::move(col));
    }
    return InformationSystem(std::move(ids), std::move(cols));
}

InformationSystem make_u3(int n, bool points, bool cuts) {
    int m = n + 1;
    Columns cols;
    if (points)
        for (int i = 1; i <= n; ++i) {
            std::vector<int> col(static_cast<std::size_t>(m));
            for (int j = 1; j <= m; ++j) col[static_cast<std::size_t>(j - 1)] = (j == i);
            cols.emplace_back("p" + std::to_string(i), std::move(col));
        }
    if (cuts)
        for (int i = 1; i <= n; ++i) {
            std::vector<int> col(static_cast<std::size_t>(m));
            for (int j = 1; j <= m; ++j) col[static_cast<std::size_t>(j - 1)] = (j > i);
            cols.emplace_back("l" + std::to_string(i), std::move(col));
        }
    return InformationSystem(range_ids(m), std::move(cols));
}

// The u4 grid carries one spare row and column beyond the indexed cells so
// that indicator families keep the solution sets the infinite system gives
// them (e.g. {f_1_1=0,...,f_1_n=0} stays consistent and all-cells-zero stays
// satisfiable).
InformationSystem make_u4(int n) {
    int m = n + 1;
    std::vector<std::string> ids;
    for (int p = 1; p <= m; ++p)
        for (int q = 1; q <= m; ++q) ids.push_back(std::to_string(p) + "_" + std::to_string(q));
    auto cell = [m](int p, int q) { return static_cast<std::size_t>((p - 1) * m + (q - 1)); };
    Columns cols;
    for (int i = 1; i <= n; ++i) {
        std::vector<int> col(static_cast<std::size_t>(m * m));
        for (int p = 1; p <= m; ++p)
            for (int q = 1; q <= m; ++q) col[cell(p, q)] = (p > i);
        cols.emplace_back("f" + std::to_string(i), std::move(col));
    }
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            std::vector<int> col(static_cast<std::size_t>(m * m));
            col[cell(i, j)] = 1;
            cols.emplace_back("f" + std::to_string(i) + "_" + std::to_string(j),
                              std::move(col));
        }
    return InformationSystem(std::move(ids), std::move(cols));
}

InformationSystem make_u5(int n) {
    std::vector<std::string> ids;
    std::vector<std::pair<int, int>> elems;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= i; ++j) {
            ids.push_back(std::to_string(i) + "_" + std::to_string(j));
            elems.emplace_back(i, j);
        }
    Columns cols;
    for (int i = 1; i <= n; ++i) {
        std::vector<int> col;
        for (auto [p, q] : elems) col.push_back(p == i);
        cols.emplace_back("f" + std::to_string(i), std::move(col));
    }
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= i; ++j) {
            std::vector<int> col;
            for (auto [p, q] : elems) col.push_back(p == i && q == j);
            cols.emplace_back("f" + std::to_string(i) + "_" + std::to_string(j),
                              std::move(col));
        }
    return InformationSystem(std::move(ids), std::move(cols));
}

}  // namespace

InformationSystem canonical_system(CanonicalKind kind, int n) {
    if (n < 1) throw StructureError("canonical systems need n >= 1");
    switch (kind) {
        case CanonicalKind::u1: return make_u1(n);
        case CanonicalKind::u2: return make_u2(n);
        case CanonicalKind::u3: return make_u3(n, true, true);
        case CanonicalKind::u4: return make_u4(n);
        case CanonicalKind::u5: return make_u5(n);
        case CanonicalKind::u6: return make_u3(n, true, false);
        case CanonicalKind::u7: return make_u3(n, false, true);
    }
    throw StructureError("unknown canonical kind");
}

int recommended_witness_size(CanonicalKind kind) {
    switch (kind) {
        case CanonicalKind::u1: return 4;
        case CanonicalKind::u2: return 3;
        case CanonicalKind::u3: return 7;
        case CanonicalKind::u4: return 4;
        case CanonicalKind::u5: return 4;
        case CanonicalKind::u6: return 6;
        case CanonicalKind::u7: return 7;
    }
    return 4;
}

namespace {

Equation named_eq(const InformationSystem& sys, const std::string& name, int value) {
    auto idx = sys.attribute_index(name);
    if (!idx) throw StructureError("no such attribute: " + name);
    return Equation{*idx, value};
}

bool is_minimal_inconsistent(const InformationSystem& sys, const EquationSystem& s) {
    if (is_consistent(sys, s)) return false;
    return min_inconsistent_subsystem(sys, s).eqs.size() == s.eqs.size();
}

void push(LemmaWitnessReport& rep, const std::string& name, bool ok,
          const std::string& detail = "") {
    rep.checks.push_back(WitnessCheck{name, ok, detail});
}

void check_eind(LemmaWitnessReport& rep, const InformationSystem& sys,
                const std::string& label, const std::string& expected) {
    auto report = classify_system(sys, label);
    push(rep, "indicator row is " + expected, report.eind.matched_class == expected,
         "got " + report.eind.matched_class);
}

void check_d_complete(LemmaWitnessReport& rep, const InformationSystem& sys,
                      const std::vector<std::size_t>& pool, int universe) {
    int d = static_cast<int>(std::floor(std::log2(universe)));
    auto tree = find_d_complete_tree(sys, pool, d);
    push(rep, "d-complete tree of depth " + std::to_string(d) + " exists",
         tree.has_value());
    if (tree) {
        Problem z = Problem::all_attributes(sys);
        push(rep, "d-complete tree certifies h2 >= " + std::to_string(d),
             lower_bound_h2(sys, z, *tree) == d);
    }
}

}  // namespace

LemmaWitnessReport lemma_witnesses(CanonicalKind kind, int n) {
    LemmaWitnessReport rep{kind, n, {}};
    InformationSystem sys = canonical_system(kind, n);
    std::string label = std::string(to_string(kind)) + "(" + std::to_string(n) + ")";
    Budget budget(200'000'000);

    switch (kind) {
        case CanonicalKind::u1: {
            // {g(1..n-1)=1, p_1=0, ..., p_{n-1}=0} is inconsistent with all
            // proper subsystems consistent: no small inconsistent core.
            EquationSystem p;
            std::uint64_t mask = (std::uint64_t{1} << n) - 2;
            p.eqs.push_back(named_eq(sys, "g" + std::to_string(mask), 1));
            for (int i = 1; i < n; ++i)
                p.eqs.push_back(named_eq(
                    sys, "g" + std::to_string(std::uint64_t{1} << (n - i)), 0));
            push(rep, "witness family is minimal inconsistent of size " + std::to_string(n),
                 is_minimal_inconsistent(sys, p) && static_cast<int>(p.eqs.size()) == n);
            auto cert = certify_i_reduced(sys, &budget);
            push(rep, "largest minimal inconsistent system has size " + std::to_string(n),
                 cert.r == n, "got " + std::to_string(cert.r));
            if (n >= 4) check_eind(rep, sys, label, "V1");
            break;
        }
        case CanonicalKind::u2: {
            push(rep, "2-i-reduced at cap 4", check_r_i_reduced(sys, 2, 4, &budget).holds);
            Problem z = Problem::all_attributes(sys);
            push(rep, "full problem realizes the whole cube",
                 solution_set(sys, z).size() == (std::size_t{1} << n));
            if (n >= 3) check_eind(rep, sys, label, "V2");
            break;
        }
        case CanonicalKind::u3: {
            EquationSystem s;
            for (int i = 1; i <= n; ++i) s.eqs.push_back(named_eq(sys, "p" + std::to_string(i), 0));
            s.eqs.push_back(named_eq(sys, "l" + std::to_string(n), 0));
            push(rep, "S_n minimal inconsistent of size n+1", is_minimal_inconsistent(sys, s));
            push(rep, "not i-reduced below n+1",
                 static_cast<int>(min_inconsistent_subsystem(sys, s).eqs.size()) == n + 1);
            push(rep, "independence dimension 1",
                 independence_dimension(sys, &budget).dimension == 1);
            std::vector<std::size_t> cuts;
            for (int i = 1; i <= n; ++i) cuts.push_back(*sys.attribute_index("l" + std::to_string(i)));
            check_d_complete(rep, sys, cuts, n + 1);
            if (n >= 7) check_eind(rep, sys, label, "V3");
            break;
        }
        case CanonicalKind::u4: {
            EquationSystem s;
            for (int j = 1; j <= n; ++j)
                s.eqs.push_back(named_eq(sys, "f1_" + std::to_string(j), 0));
            push(rep, "S_n consistent", is_consistent(sys, s));
            push(rep, "S_n irreducible (no smaller equal-solution subsystem)",
                 min_equivalent_subsystem(sys, s).eqs.size() == s.eqs.size());
            push(rep, "2-i-reduced at cap 4", check_r_i_reduced(sys, 2, 4, &budget).holds);
            push(rep, "independence dimension 1",
                 independence_dimension(sys, &budget).dimension == 1);
            std::vector<std::size_t> rows;
            for (int i = 1; i <= n; ++i) rows.push_back(*sys.attribute_index("f" + std::to_string(i)));
            check_d_complete(rep, sys, rows, n + 1);
            if (n >= 4) check_eind(rep, sys, label, "V4");
            break;
        }
        case CanonicalKind::u5: {
            EquationSystem s;
            s.eqs.push_back(named_eq(sys, "f" + std::to_string(n), 1));
            for (int j = 1; j <= n; ++j)
                s.eqs.push_back(
                    named_eq(sys, "f" + std::to_string(n) + "_" + std::to_string(j), 0));
            push(rep, "S_n minimal inconsistent of size n+1", is_minimal_inconsistent(sys, s));
            if (n >= 3)
                push(rep, "k-level 2", k_level(sys).value == 2,
                     "got " + std::to_string(k_level(sys).value));
            push(rep, "independence dimension 1",
                 independence_dimension(sys, &budget).dimension == 1);
            if (n >= 3) check_eind(rep, sys, label, "V5");
            break;
        }
        case CanonicalKind::u6: {
            push(rep, "2-i-reduced at cap 4", check_r_i_reduced(sys, 2, 4, &budget).holds);
            push(rep, "k-level 1", k_level(sys).value == 1,
                 "got " + std::to_string(k_level(sys).value));
            auto cert = certify_i_reduced(sys, &budget);
            push(rep, "largest minimal inconsistent system has size 2", cert.r == 2,
                 "got " + std::to_string(cert.r));
            if (n >= 3) check_eind(rep, sys, label, "V6");
            break;
        }
        case CanonicalKind::u7: {
            push(rep, "2-reduced at cap 4", check_r_reduced(sys, 2, 4, &budget).holds);
            push(rep, "2-i-reduced at cap 4", check_r_i_reduced(sys, 2, 4, &budget).holds);
            if (n >= 5) {
                EquationSystem s;
                s.eqs.push_back(named_eq(sys, "l1", 1));
                s.eqs.push_back(named_eq(sys, "l2", 1));
                s.eqs.push_back(named_eq(sys, "l3", 0));
                s.eqs.push_back(named_eq(sys, "l5", 0));
                EquationSystem expected;
                expected.eqs.push_back(named_eq(sys, "l2", 1));
                expected.eqs.push_back(named_eq(sys, "l3", 0));
                push(rep, "chain system reduces to {l2=1, l3=0}",
                     min_equivalent_subsystem(sys, s) == expected);
            }
            push(rep, "independence dimension 1",
                 independence_dimension(sys, &budget).dimension == 1);
            if (n >= 7) check_eind(rep, sys, label, "V7");
            break;
        }
    }
    return rep;
}

}  // namespace hyptree
