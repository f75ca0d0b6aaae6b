#pragma once

#include <optional>

#include "hyptree/table.hpp"
#include "hyptree/trees.hpp"

namespace hyptree {

/// Brute-force reference for min_depth: plain recursion on the definition of
/// "a depth-d tree solving the restriction exists", with no memoization, no
/// hypothesis-space reduction and no canonicalization. Returns the smallest
/// depth <= d_max, or nullopt if every depth up to d_max fails. Intended for
/// tests at small sizes only.
std::optional<int> oracle_min_depth(const InformationSystem& sys, const Problem& z,
                                    QueryModel m, int d_max);

}  // namespace hyptree
