#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hyptree/table.hpp"
#include "hyptree/trees.hpp"

namespace hyptree {

struct SolveOptions {
    bool extract = false;
    /// Enumerate all 2^n hypotheses for m2/m3 instead of the per-coordinate
    /// composition. Slow; kept for cross-checking the reduction.
    bool full_hypothesis_enum = false;
    std::uint64_t node_budget = 200'000'000;
};

struct SolveStats {
    std::uint64_t nodes = 0;
    std::uint64_t memo_hits = 0;
    double time_ms = 0.0;
};

struct DepthResult {
    int depth = 0;
    std::optional<DecisionTree> tree;
    SolveStats stats;
};

/// Exact minimum depth of a decision tree solving z under model m, computed
/// as the value of the adversary game on the solution set. With
/// opts.extract, also returns an optimal tree that verifies under m.
DepthResult min_depth(const InformationSystem& sys, const Problem& z, QueryModel m,
                      const SolveOptions& opts = {});

struct ShannonResult {
    int depth = 0;
    std::vector<std::size_t> witness_attrs;  // an argmax attribute subset
};

/// max { min_depth(z) : z formed from at most n pool attributes }. Problems
/// are canonicalized to attribute subsets in pool order; `budget` bounds the
/// number of subsets solved.
ShannonResult shannon_estimate(const InformationSystem& sys, QueryModel m, int n,
                               std::uint64_t budget = 1'000'000);

}  // namespace hyptree
