#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyptree/classify.hpp"
#include "hyptree/table.hpp"
#include "hyptree/trees.hpp"

namespace hyptree {

/// m4-legal tree of depth <= dim z built by repeatedly proposing a realized
/// tuple that agrees with every counterexample received so far.
DecisionTree sequential_proper(const InformationSystem& sys, const Problem& z);

/// m4-legal tree built by majority proposals. On each step the proposed
/// tuple is either the coordinate-wise majority of the live tuples (when
/// realized) or the row of an element satisfying the unbalanced equations.
/// Every counterexample shrinks the live set by the factor (1 - 1/r), giving
/// depth < r * I * ln(4n). Requires cert.r >= 2; an inconsistent unbalanced
/// subsystem raises CertificateError (the certificate was wrong).
DecisionTree halving_proper(const InformationSystem& sys, const Problem& z,
                            const ReducednessCertificate& cert);

/// Depth bound r * I * ln(4n) for halving_proper.
double halving_depth_bound(int r, int i_dimension, int dim);

/// Rewrites a verified m5 tree into an m4 tree of depth <= 2^h - 1:
/// hypothesis nodes keep their shape with the confirmation branch closed
/// off; attribute nodes become the serial composition of their transformed
/// subtrees with each surviving terminal replaced by a one-query
/// disambiguation between the two candidate tuples.
DecisionTree to_proper_only(const InformationSystem& sys, const Problem& z,
                            const DecisionTree& m5_tree);

/// m5-legal tree of depth <= cert.r * k where k is the system's k-level.
/// Follows the level-descent construction: pick per-coordinate values whose
/// counterexample side drops the k-level, query the assembled tuple if it is
/// realized, otherwise run an attribute cascade over a small inconsistent
/// core and graft the level-dropped subtrees.
DecisionTree k_system_tree(const InformationSystem& sys, const Problem& z,
                           const ReducednessCertificate& cert, int* k_out = nullptr);

/// Complete binary attribute tree of uniform depth d whose every
/// root-to-leaf equation system is consistent; certifies h2 >= d.
struct DCompleteTree {
    struct Node {
        std::size_t attr = 0;
        std::vector<Node> children;  // empty or exactly {value 0, value 1}
        bool is_leaf() const { return children.empty(); }
    };
    Node root;
    int d = 0;
    std::vector<std::size_t> attributes() const;
};

/// Backtracking search in pool order with memoized dead-state pruning.
std::optional<DCompleteTree> find_d_complete_tree(const InformationSystem& sys,
                                                  const std::vector<std::size_t>& pool,
                                                  int d);

/// Validates the tree and that its attributes appear in z, then returns d as
/// a certified lower bound on the m2 minimum depth.
int lower_bound_h2(const InformationSystem& sys, const Problem& z, const DCompleteTree& g);

std::string to_dot(const DCompleteTree& g, const InformationSystem& sys);

struct InconsistentWitness {
    EquationSystem system;
    std::vector<std::size_t> attrs;  // induced problem, in equation order
};

/// Largest minimal inconsistent system over the pool with at most size_cap
/// equations (every proper subsystem consistent), searched largest-first in
/// a deterministic literal order. The induced problem z satisfies
/// min_depth(m4), min_depth(m5) >= |system| - 1.
std::optional<InconsistentWitness> minimal_inconsistent_witness(
    const InformationSystem& sys, const std::vector<std::size_t>& pool, int size_cap = 4);

}  // namespace hyptree
