#pragma once

#include <string>
#include <vector>

#include "hyptree/table.hpp"

namespace hyptree {

/// The five query models. Attribute queries ask one coordinate's value;
/// hypothesis queries propose a full n-tuple and are answered by a
/// confirmation or a one-coordinate counterexample. "Proper" hypotheses are
/// tuples realized by some universe element, i.e. members of the full
/// problem's solution set.
enum class QueryModel { m1, m2, m3, m4, m5 };

bool allows_attribute_queries(QueryModel m);
bool allows_hypothesis_queries(QueryModel m);
/// True for m4/m5, where hypotheses must lie in the full solution set.
bool requires_proper_hypotheses(QueryModel m);
const char* to_string(QueryModel m);
QueryModel query_model_from_string(const std::string& s);

struct Query {
    enum class Kind { attribute, hypothesis };
    Kind kind = Kind::attribute;
    int coordinate = 0;  // attribute queries: 1..n
    Tuple hypothesis{};  // hypothesis queries: width n

    static Query attribute(int coord) { return Query{Kind::attribute, coord, {}}; }
    static Query hyp(Tuple t) { return Query{Kind::hypothesis, 0, t}; }
    friend bool operator==(const Query&, const Query&) = default;
};

struct Answer {
    enum class Kind { value, confirm, counterexample };
    Kind kind = Kind::value;
    int coordinate = 0;  // value & counterexample answers
    int value = 0;       // value answers only

    static Answer attr_value(int coord, int v) { return Answer{Kind::value, coord, v}; }
    static Answer confirm() { return Answer{Kind::confirm, 0, 0}; }
    static Answer counterexample(int coord) { return Answer{Kind::counterexample, coord, 0}; }
    friend bool operator==(const Answer&, const Answer&) = default;
};

/// Rooted tree. Terminals carry an n-tuple label; working nodes carry a
/// query and a complete child map in canonical answer order:
///   attribute:  children[0] = value 0, children[1] = value 1
///   hypothesis: children[0] = confirm, children[i] = counterexample at i
struct DecisionTree {
    struct Node {
        Query query{};
        Tuple label{};
        std::vector<Node> children;
        bool is_terminal() const { return children.empty(); }
    };
    Node root;

    static DecisionTree terminal(Tuple label) { return DecisionTree{Node{{}, label, {}}}; }
};

/// The answer corresponding to a working node's child slot.
Answer answer_for_child(const Query& q, std::size_t child_index);

/// Maximum number of working nodes on a root-to-terminal path.
int depth(const DecisionTree& t);

/// Total node count.
std::size_t node_count(const DecisionTree& t);

struct PathStep {
    Query query;
    Answer answer;
};
struct Literal {
    int coordinate = 0;
    int value = 0;
    friend bool operator==(const Literal&, const Literal&) = default;
};

/// The word of coordinate literals a complete path induces: a value answer
/// contributes one literal, a confirmation contributes all n hypothesis
/// literals, a counterexample at i contributes (i, negated hypothesis bit).
std::vector<Literal> path_word(const std::vector<PathStep>& path, int dim);

/// True iff the tree solves z under model m: every query is legal for m and
/// every complete path narrows the solution set to at most one tuple, which
/// then matches the terminal label. Structural malformation throws
/// StructureError instead of returning false.
bool verify_solves(const InformationSystem& sys, const Problem& z, const DecisionTree& t,
                   QueryModel m);

/// Labels of all terminals whose path equations the element satisfies.
/// Never empty; a singleton {z(a)} whenever the tree verifies.
std::vector<Tuple> trace(const InformationSystem& sys, const Problem& z,
                         const DecisionTree& t, std::size_t elem);

/// Graphviz export with deterministic preorder node numbering. Working nodes
/// are labeled `f<i>` or `H=<bits>`, terminals `<bits>`, edges `f<i>=0|1`,
/// `yes`, or `f<i>!=<b>`.
std::string to_dot(const DecisionTree& t);

}  // namespace hyptree
