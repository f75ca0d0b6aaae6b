#include "hyptree/oracle.hpp"

#include <vector>

#include "hyptree/errors.hpp"

namespace hyptree {

namespace {

using Tuples = std::vector<Tuple>;

Tuples filter(const Tuples& live, int coord, int value) {
    Tuples out;
    for (const auto& t : live)
        if (t.get(coord) == value) out.push_back(t);
    return out;
}

bool solvable(const Tuples& live, int d, int dim, QueryModel m, const Tuples& delta_full) {
    if (live.size() <= 1) return true;
    if (d == 0) return false;

    if (allows_attribute_queries(m)) {
        for (int i = 1; i <= dim; ++i) {
            if (solvable(filter(live, i, 0), d - 1, dim, m, delta_full) &&
                solvable(filter(live, i, 1), d - 1, dim, m, delta_full))
                return true;
        }
    }
    if (allows_hypothesis_queries(m)) {
        auto try_hypothesis = [&](const Tuple& h) {
            // The confirmation branch holds at most one tuple and always solves.
            for (int i = 1; i <= dim; ++i)
                if (!solvable(filter(live, i, 1 - h.get(i)), d - 1, dim, m, delta_full))
                    return false;
            return true;
        };
        if (requires_proper_hypotheses(m)) {
            for (const auto& h : delta_full)
                if (try_hypothesis(h)) return true;
        } else {
            for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << dim); ++bits)
                if (try_hypothesis(Tuple{dim, bits})) return true;
        }
    }
    return false;
}

}  // namespace

std::optional<int> oracle_min_depth(const InformationSystem& sys, const Problem& z,
                                    QueryModel m, int d_max) {
    if (z.dim() > 16) throw BudgetError("oracle_min_depth needs dim <= 16");
    TupleSet delta = solution_set(sys, z);
    Tuples full;
    for (std::size_t i = 0; i < delta.size(); ++i) full.push_back(delta.at(i));
    for (int d = 0; d <= d_max; ++d)
        if (solvable(full, d, z.dim(), m, full)) return d;
    return std::nullopt;
}

}  // namespace hyptree
