#include "hyptree/trees.hpp"

#include <algorithm>
#include <sstream>

#include "hyptree/errors.hpp"

namespace hyptree {

bool allows_attribute_queries(QueryModel m) {
    return m == QueryModel::m1 || m == QueryModel::m3 || m == QueryModel::m5;
}

bool allows_hypothesis_queries(QueryModel m) { return m != QueryModel::m1; }

bool requires_proper_hypotheses(QueryModel m) {
    return m == QueryModel::m4 || m == QueryModel::m5;
}

const char* to_string(QueryModel m) {
    switch (m) {
        case QueryModel::m1: return "m1";
        case QueryModel::m2: return "m2";
        case QueryModel::m3: return "m3";
        case QueryModel::m4: return "m4";
        case QueryModel::m5: return "m5";
    }
    return "?";
}

QueryModel query_model_from_string(const std::string& s) {
    if (s == "m1") return QueryModel::m1;
    if (s == "m2") return QueryModel::m2;
    if (s == "m3") return QueryModel::m3;
    if (s == "m4") return QueryModel::m4;
    if (s == "m5") return QueryModel::m5;
    throw ParseError("unknown query model: " + s);
}

Answer answer_for_child(const Query& q, std::size_t child_index) {
    if (q.kind == Query::Kind::attribute) {
        if (child_index > 1) throw StructureError("attribute node has two children");
        return Answer::attr_value(q.coordinate, static_cast<int>(child_index));
    }
    if (child_index == 0) return Answer::confirm();
    if (child_index > static_cast<std::size_t>(q.hypothesis.width))
        throw StructureError("hypothesis node has n+1 children");
    return Answer::counterexample(static_cast<int>(child_index));
}

namespace {

int depth_of(const DecisionTree::Node& n) {
    if (n.is_terminal()) return 0;
    int d = 0;
    for (const auto& c : n.children) d = std::max(d, depth_of(c));
    return d + 1;
}

std::size_t count_of(const DecisionTree::Node& n) {
    std::size_t c = 1;
    for (const auto& ch : n.children) c += count_of(ch);
    return c;
}

void check_node_shape(const DecisionTree::Node& n, int dim) {
    if (n.is_terminal()) {
        if (n.label.width != dim)
            throw StructureError("terminal label width differs from problem dimension");
        return;
    }
    if (n.query.kind == Query::Kind::attribute) {
        if (n.query.coordinate < 1 || n.query.coordinate > dim)
            throw StructureError("attribute query coordinate out of range");
        if (n.children.size() != 2)
            throw StructureError("attribute node must have exactly 2 children");
    } else {
        if (n.query.hypothesis.width != dim)
            throw StructureError("hypothesis width differs from problem dimension");
        if (n.children.size() != static_cast<std::size_t>(dim) + 1)
            throw StructureError("hypothesis node must have exactly n+1 children");
    }
    for (const auto& c : n.children) check_node_shape(c, dim);
}

bool query_legal(const Query& q, QueryModel m, const TupleSet& delta_full) {
    if (q.kind == Query::Kind::attribute) return allows_attribute_queries(m);
    if (!allows_hypothesis_queries(m)) return false;
    if (requires_proper_hypotheses(m) && !delta_full.contains(q.hypothesis)) return false;
    return true;
}

// Walks every complete path, carrying the restriction of delta_full induced
// by the path word so far.
bool verify_node(const DecisionTree::Node& n, QueryModel m, const TupleSet& delta_full,
                 const TupleSet& live) {
    if (n.is_terminal()) {
        if (live.size() > 1) return false;
        if (live.size() == 1 && live.at(0) != n.label) return false;
        return true;
    }
    if (!query_legal(n.query, m, delta_full)) return false;
    if (n.query.kind == Query::Kind::attribute) {
        int i = n.query.coordinate;
        return verify_node(n.children[0], m, delta_full, restrict(live, i, 0)) &&
               verify_node(n.children[1], m, delta_full, restrict(live, i, 1));
    }
    const Tuple& h = n.query.hypothesis;
    TupleSet confirmed =
        live.contains(h) ? TupleSet(live.width(), {h.bits}) : TupleSet(live.width(), {});
    if (!verify_node(n.children[0], m, delta_full, confirmed)) return false;
    for (int i = 1; i <= h.width; ++i)
        if (!verify_node(n.children[static_cast<std::size_t>(i)], m, delta_full,
                         restrict(live, i, 1 - h.get(i))))
            return false;
    return true;
}

}  // namespace

int depth(const DecisionTree& t) { return depth_of(t.root); }

std::size_t node_count(const DecisionTree& t) { return count_of(t.root); }

std::vector<Literal> path_word(const std::vector<PathStep>& path, int dim) {
    std::vector<Literal> word;
    for (const auto& step : path) {
        switch (step.answer.kind) {
            case Answer::Kind::value:
                word.push_back({step.answer.coordinate, step.answer.value});
                break;
            case Answer::Kind::confirm:
                for (int i = 1; i <= dim; ++i)
                    word.push_back({i, step.query.hypothesis.get(i)});
                break;
            case Answer::Kind::counterexample: {
                int i = step.answer.coordinate;
                word.push_back({i, 1 - step.query.hypothesis.get(i)});
                break;
            }
        }
    }
    return word;
}

bool verify_solves(const InformationSystem& sys, const Problem& z, const DecisionTree& t,
                   QueryModel m) {
    check_node_shape(t.root, z.dim());
    TupleSet delta = solution_set(sys, z);
    return verify_node(t.root, m, delta, delta);
}

namespace {

void trace_node(const DecisionTree::Node& n, const Tuple& row,
                std::vector<Tuple>& out) {
    if (n.is_terminal()) {
        out.push_back(n.label);
        return;
    }
    if (n.query.kind == Query::Kind::attribute) {
        trace_node(n.children[static_cast<std::size_t>(row.get(n.query.coordinate))], row,
                   out);
        return;
    }
    const Tuple& h = n.query.hypothesis;
    if (row == h) trace_node(n.children[0], row, out);
    for (int i = 1; i <= h.width; ++i)
        if (row.get(i) != h.get(i))
            trace_node(n.children[static_cast<std::size_t>(i)], row, out);
}

}  // namespace

std::vector<Tuple> trace(const InformationSystem& sys, const Problem& z,
                         const DecisionTree& t, std::size_t elem) {
    if (elem >= sys.universe_size()) throw StructureError("unknown universe element");
    check_node_shape(t.root, z.dim());
    std::vector<Tuple> out;
    trace_node(t.root, z.row(elem), out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

void dot_node(const DecisionTree::Node& n, int& next_id, std::ostringstream& os) {
    int id = next_id++;
    if (n.is_terminal()) {
        os << "  n" << id << " [shape=box,label=\"" << n.label.str() << "\"];\n";
        return;
    }
    if (n.query.kind == Query::Kind::attribute)
        os << "  n" << id << " [label=\"f" << n.query.coordinate << "\"];\n";
    else
        os << "  n" << id << " [label=\"H=" << n.query.hypothesis.str() << "\"];\n";
    for (std::size_t c = 0; c < n.children.size(); ++c) {
        int child_id = next_id;
        Answer a = answer_for_child(n.query, c);
        std::string lbl;
        switch (a.kind) {
            case Answer::Kind::value:
                lbl = "f" + std::to_string(a.coordinate) + "=" + std::to_string(a.value);
                break;
            case Answer::Kind::confirm:
                lbl = "yes";
                break;
            case Answer::Kind::counterexample:
                lbl = "f" + std::to_string(a.coordinate) +
                      "!=" + std::to_string(n.query.hypothesis.get(a.coordinate));
                break;
        }
        dot_node(n.children[c], next_id, os);
        os << "  n" << id << " -> n" << child_id << " [label=\"" << lbl << "\"];\n";
    }
}

}  // namespace

std::string to_dot(const DecisionTree& t) {
    std::ostringstream os;
    os << "digraph decision_tree {\n";
    int next_id = 0;
    dot_node(t.root, next_id, os);
    os << "}\n";
    return os.str();
}

}  // namespace hyptree
