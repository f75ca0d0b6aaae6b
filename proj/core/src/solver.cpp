#include "hyptree/solver.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <limits>
#include <unordered_map>

#include "hyptree/errors.hpp"

namespace hyptree {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 2;

// Game search over subsets of the full solution set, encoded as 64-bit masks
// in the canonical (ascending tuple value) order. Every reachable state is a
// coordinate restriction of the root, so the memo stays small.
class GameSolver {
public:
    GameSolver(const InformationSystem& sys, const Problem& z, QueryModel m,
               const SolveOptions& opts)
        : model_(m), opts_(opts), dim_(z.dim()), delta_(solution_set(sys, z)) {
        if (delta_.size() > 64)
            throw BudgetError("solution set has " + std::to_string(delta_.size()) +
                              " tuples; the solver supports at most 64");
        if (opts.full_hypothesis_enum && dim_ > 20)
            throw BudgetError("full hypothesis enumeration needs dim <= 20");
        full_ = delta_.size() == 64 ? ~std::uint64_t{0}
                                    : (std::uint64_t{1} << delta_.size()) - 1;
        mask1_.assign(static_cast<std::size_t>(dim_) + 1, 0);
        for (std::size_t j = 0; j < delta_.size(); ++j) {
            Tuple t = delta_.at(j);
            for (int i = 1; i <= dim_; ++i)
                if (t.get(i)) mask1_[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
        }
    }

    const TupleSet& delta() const { return delta_; }
    std::uint64_t full_mask() const { return full_; }
    SolveStats& stats() { return stats_; }

    // Branch reached by the counterexample at coordinate i against bit d_i.
    std::uint64_t counter_branch(std::uint64_t live, int i, int d_i) const {
        std::uint64_t m1 = mask1_[static_cast<std::size_t>(i)];
        return live & (d_i ? ~m1 : m1);
    }

    int value(std::uint64_t live) {
        if (std::popcount(live) <= 1) return 0;
        if (auto it = memo_.find(live); it != memo_.end()) {
            ++stats_.memo_hits;
            return it->second;
        }
        if (++stats_.nodes > opts_.node_budget)
            throw BudgetError("solver node budget exceeded");

        int best = kInf;
        if (allows_attribute_queries(model_)) {
            for (int i = 1; i <= dim_; ++i) {
                std::uint64_t a1 = live & mask1_[static_cast<std::size_t>(i)];
                std::uint64_t a0 = live & ~a1;
                if (!a0 || !a1) continue;  // one side empty: the other repeats live
                best = std::min(best, 1 + std::max(value(a0), value(a1)));
            }
        }
        if (allows_hypothesis_queries(model_)) {
            if (requires_proper_hypotheses(model_)) {
                for (std::size_t j = 0; j < delta_.size(); ++j)
                    best = std::min(best, hypothesis_value(live, delta_.at(j)));
            } else if (opts_.full_hypothesis_enum) {
                for (std::uint64_t v = 0; v < (std::uint64_t{1} << dim_); ++v)
                    best = std::min(best, hypothesis_value(live, Tuple{dim_, v}));
            } else {
                best = std::min(best, composed_hypothesis_value(live));
            }
        }
        if (best >= kInf) throw StructureError("no legal progressing query: unsolvable under model");
        memo_.emplace(live, best);
        return best;
    }

    // Value of querying one concrete hypothesis, or kInf if non-progressing.
    int hypothesis_value(std::uint64_t live, Tuple h) {
        int worst = 0;  // the confirmation branch is at most a singleton
        for (int i = 1; i <= dim_; ++i) {
            std::uint64_t b = counter_branch(live, i, h.get(i));
            if (b == live) return kInf;
            if (!b) continue;
            worst = std::max(worst, value(b));
        }
        return 1 + worst;
    }

    // m2/m3: counterexample branches are coordinate-local, so the best
    // arbitrary hypothesis picks each bit independently.
    int composed_hypothesis_value(std::uint64_t live) {
        int worst = 0;
        for (int i = 1; i <= dim_; ++i) {
            std::uint64_t a1 = live & mask1_[static_cast<std::size_t>(i)];
            std::uint64_t a0 = live & ~a1;
            if (!a0 || !a1) continue;  // constant bit: pick it, branch is vacuous
            worst = std::max(worst, std::min(value(a0), value(a1)));
        }
        return 1 + worst;
    }

    // Lexicographically least hypothesis whose query value meets `target+1`,
    // mirroring first-in-tuple-order tie breaking of the full enumeration.
    Tuple composed_hypothesis(std::uint64_t live, int target) {
        Tuple h = Tuple::zeros(dim_);
        for (int i = 1; i <= dim_; ++i) {
            std::uint64_t a1 = live & mask1_[static_cast<std::size_t>(i)];
            std::uint64_t a0 = live & ~a1;
            if (a1 == live) {
                h = h.with(i, 1);  // constant 1: a zero bit would repeat live
            } else if (a0 == live) {
                // constant 0: keep the zero bit, counterexample branch empty
            } else if (value(a1) > target) {
                h = h.with(i, 1);
            }
        }
        return h;
    }

    DecisionTree::Node extract(std::uint64_t live) {
        if (!live) return DecisionTree::Node{{}, Tuple::zeros(dim_), {}};
        if (std::popcount(live) == 1)
            return DecisionTree::Node{{}, delta_.at(static_cast<std::size_t>(std::countr_zero(live))), {}};
        int v = value(live);
        if (allows_attribute_queries(model_)) {
            for (int i = 1; i <= dim_; ++i) {
                std::uint64_t a1 = live & mask1_[static_cast<std::size_t>(i)];
                std::uint64_t a0 = live & ~a1;
                if (!a0 || !a1) continue;
                if (1 + std::max(value(a0), value(a1)) == v) {
                    DecisionTree::Node n{Query::attribute(i), {}, {}};
                    n.children.push_back(extract(a0));
                    n.children.push_back(extract(a1));
                    return n;
                }
            }
        }
        if (allows_hypothesis_queries(model_)) {
            if (requires_proper_hypotheses(model_)) {
                for (std::size_t j = 0; j < delta_.size(); ++j) {
                    Tuple h = delta_.at(j);
                    if (hypothesis_value(live, h) == v) return extract_hypothesis(live, h);
                }
            } else if (opts_.full_hypothesis_enum) {
                for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << dim_); ++bits) {
                    Tuple h{dim_, bits};
                    if (hypothesis_value(live, h) == v) return extract_hypothesis(live, h);
                }
            } else {
                Tuple h = composed_hypothesis(live, v - 1);
                return extract_hypothesis(live, h);
            }
        }
        throw StructureError("extraction failed to reproduce the game value");
    }

    DecisionTree::Node extract_hypothesis(std::uint64_t live, Tuple h) {
        DecisionTree::Node n{Query::hyp(h), {}, {}};
        n.children.push_back(DecisionTree::Node{{}, h, {}});
        for (int i = 1; i <= dim_; ++i)
            n.children.push_back(extract(counter_branch(live, i, h.get(i))));
        return n;
    }

private:
    QueryModel model_;
    SolveOptions opts_;
    int dim_;
    TupleSet delta_;
    std::uint64_t full_ = 0;
    std::vector<std::uint64_t> mask1_;
    std::unordered_map<std::uint64_t, int> memo_;
    SolveStats stats_;
};

}  // namespace

DepthResult min_depth(const InformationSystem& sys, const Problem& z, QueryModel m,
                      const SolveOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    GameSolver solver(sys, z, m, opts);
    DepthResult res;
    res.depth = solver.value(solver.full_mask());
    if (opts.extract) res.tree = DecisionTree{solver.extract(solver.full_mask())};
    res.stats = solver.stats();
    res.stats.time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    return res;
}

namespace {

// Number of problems shannon_estimate would solve; saturates at limit+1.
std::uint64_t subset_count(std::size_t pool, int n, std::uint64_t limit) {
    std::uint64_t total = 0;
    std::uint64_t c = 1;
    for (int k = 1; k <= n && k <= static_cast<int>(pool); ++k) {
        c = c * (pool - static_cast<std::size_t>(k) + 1) / static_cast<std::uint64_t>(k);
        if (c > limit || (total += c) > limit) return limit + 1;
    }
    return total;
}

}  // namespace

ShannonResult shannon_estimate(const InformationSystem& sys, QueryModel m, int n,
                               std::uint64_t budget) {
    if (n < 1) throw StructureError("shannon_estimate requires n >= 1");
    std::size_t pool = sys.attribute_count();
    if (subset_count(pool, n, budget) > budget)
        throw BudgetError("shannon_estimate: subset enumeration exceeds the budget of " +
                          std::to_string(budget) + " problems");

    ShannonResult best{-1, {}};
    std::vector<std::size_t> subset;
    // Subsets by size, lexicographic within a size; first argmax wins.
    for (int k = 1; k <= n && k <= static_cast<int>(pool); ++k) {
        subset.assign(static_cast<std::size_t>(k), 0);
        for (int i = 0; i < k; ++i) subset[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
        while (true) {
            Problem z(sys, subset);
            int d = min_depth(sys, z, m).depth;
            if (d > best.depth) best = {d, subset};
            // next combination
            int i = k - 1;
            while (i >= 0 &&
                   subset[static_cast<std::size_t>(i)] ==
                       pool - static_cast<std::size_t>(k - i))
                --i;
            if (i < 0) break;
            ++subset[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return best;
}

}  // namespace hyptree
