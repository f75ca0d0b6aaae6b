#pragma once

#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "hyptree/canonical.hpp"
#include "hyptree/table.hpp"

namespace hyptree::test {

// Full binary cube on n coordinates: 2^n elements realizing every tuple.
inline InformationSystem cube(int n) { return canonical_system(CanonicalKind::u2, n); }

inline InformationSystem table(std::vector<std::string> ids,
                               std::vector<std::pair<std::string, std::vector<int>>> cols) {
    return InformationSystem(std::move(ids), std::move(cols));
}

inline EquationSystem eqs(const InformationSystem& sys,
                          std::vector<std::pair<std::string, int>> literals) {
    EquationSystem s;
    for (auto& [name, v] : literals) {
        auto idx = sys.attribute_index(name);
        REQUIRE(idx.has_value());
        s.eqs.push_back(Equation{*idx, v});
    }
    return s;
}

}  // namespace hyptree::test
