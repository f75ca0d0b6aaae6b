#include "hyptree/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "hyptree/errors.hpp"

namespace hyptree {

namespace {

using Node = DecisionTree::Node;

Node terminal(Tuple t) { return Node{{}, t, {}}; }

Node vacuous_terminal(int dim) { return terminal(Tuple::zeros(dim)); }

}  // namespace

// ---------------------------------------------------------------------------
// sequential_proper

namespace {

Node sequential_node(const TupleSet& live, int dim) {
    if (live.size() == 1) return terminal(live.at(0));
    // First live tuple in canonical order: realized and consistent with every
    // counterexample accumulated on the path.
    Tuple h = live.at(0);
    Node n{Query::hyp(h), {}, {}};
    n.children.push_back(terminal(h));
    for (int i = 1; i <= dim; ++i) {
        TupleSet branch = restrict(live, i, 1 - h.get(i));
        n.children.push_back(branch.empty() ? vacuous_terminal(dim)
                                            : sequential_node(branch, dim));
    }
    return n;
}

}  // namespace

DecisionTree sequential_proper(const InformationSystem& sys, const Problem& z) {
    TupleSet delta = solution_set(sys, z);
    return DecisionTree{sequential_node(delta, z.dim())};
}

// ---------------------------------------------------------------------------
// halving_proper

namespace {

struct HalvingBuilder {
    const InformationSystem* sys;
    const Problem* z;
    const TupleSet* delta_full;
    int r;

    Node build(const TupleSet& live) const {
        int dim = z->dim();
        if (live.empty()) return vacuous_terminal(dim);
        if (live.size() == 1) return terminal(live.at(0));

        Tuple majority = Tuple::zeros(dim);
        for (int i = 1; i <= dim; ++i) {
            std::size_t ones = restrict(live, i, 1).size();
            if (ones * 2 > live.size()) majority = majority.with(i, 1);
        }

        Tuple proposal;
        if (delta_full->contains(majority)) {
            proposal = majority;
        } else {
            // Keep the equations whose counterexample side is small; their
            // conjunction must be realizable when the certificate holds.
            EquationSystem unbalanced;
            for (int i = 1; i <= dim; ++i) {
                std::size_t against = restrict(live, i, 1 - majority.get(i)).size();
                if (against * static_cast<std::size_t>(r) < live.size())
                    unbalanced.eqs.push_back(
                        Equation{z->attrs[static_cast<std::size_t>(i - 1)], majority.get(i)});
            }
            DynBitset sol = solutions(*sys, unbalanced);
            if (sol.none())
                throw CertificateError(
                    "halving: unbalanced subsystem inconsistent; instance is not " +
                    std::to_string(r) + "-i-reduced");
            proposal = z->row(sol.first());
        }

        Node n{Query::hyp(proposal), {}, {}};
        n.children.push_back(terminal(proposal));
        for (int i = 1; i <= dim; ++i) {
            TupleSet branch = restrict(live, i, 1 - proposal.get(i));
            if (branch.empty()) {
                n.children.push_back(vacuous_terminal(dim));
                continue;
            }
            if (branch.size() * static_cast<std::size_t>(r) >
                live.size() * static_cast<std::size_t>(r - 1))
                throw CertificateError("halving: a counterexample branch kept more than "
                                       "(1-1/r) of the live tuples");
            n.children.push_back(build(branch));
        }
        return n;
    }
};

}  // namespace

DecisionTree halving_proper(const InformationSystem& sys, const Problem& z,
                            const ReducednessCertificate& cert) {
    if (cert.kind != ReducednessCertificate::Kind::i_reduced)
        throw StructureError("halving_proper needs an i-reduced certificate");
    if (cert.r < 2) throw StructureError("halving_proper needs r >= 2");
    TupleSet delta = solution_set(sys, z);
    HalvingBuilder b{&sys, &z, &delta, cert.r};
    return DecisionTree{b.build(delta)};
}

double halving_depth_bound(int r, int i_dimension, int dim) {
    return static_cast<double>(r) * static_cast<double>(i_dimension) *
           std::log(4.0 * static_cast<double>(dim));
}

// ---------------------------------------------------------------------------
// to_proper_only

namespace {

struct ProperRewriter {
    const TupleSet* delta_full;
    int dim;

    // Disambiguation between the tuple inherited from the first subtree and
    // the one at this terminal: at most those two survive here, and at least
    // one is realized when the restriction is nonempty.
    Node graft(const Node& b, const TupleSet& live, const Tuple& first_label) const {
        if (b.is_terminal()) {
            if (live.empty()) return b;
            Tuple mu, nu;
            if (delta_full->contains(first_label)) {
                mu = first_label;
                nu = b.label;
            } else if (delta_full->contains(b.label)) {
                mu = b.label;
                nu = first_label;
            } else {
                throw StructureError("to_proper_only: neither candidate tuple is realized");
            }
            Node q{Query::hyp(mu), {}, {}};
            q.children.push_back(terminal(mu));
            for (int i = 1; i <= dim; ++i) q.children.push_back(terminal(nu));
            return q;
        }
        const Tuple& h = b.query.hypothesis;
        Node out{b.query, {}, {}};
        TupleSet confirmed =
            live.contains(h) ? TupleSet(dim, {h.bits}) : TupleSet(dim, {});
        out.children.push_back(graft(b.children[0], confirmed, first_label));
        for (int i = 1; i <= dim; ++i)
            out.children.push_back(graft(b.children[static_cast<std::size_t>(i)],
                                         restrict(live, i, 1 - h.get(i)), first_label));
        return out;
    }

    // Serial composition: walk the first subtree and continue into the second
    // at each of its terminals, tracking the path restriction of `live`.
    Node splice(const Node& a, const Node& b, const TupleSet& live) const {
        if (a.is_terminal()) return graft(b, live, a.label);
        const Tuple& h = a.query.hypothesis;
        Node out{a.query, {}, {}};
        TupleSet confirmed =
            live.contains(h) ? TupleSet(dim, {h.bits}) : TupleSet(dim, {});
        out.children.push_back(splice(a.children[0], b, confirmed));
        for (int i = 1; i <= dim; ++i)
            out.children.push_back(splice(a.children[static_cast<std::size_t>(i)], b,
                                          restrict(live, i, 1 - h.get(i))));
        return out;
    }

    Node rewrite(const Node& n, const TupleSet& live) const {
        if (n.is_terminal()) return n;
        if (n.query.kind == Query::Kind::hypothesis) {
            const Tuple& h = n.query.hypothesis;
            Node out{n.query, {}, {}};
            out.children.push_back(terminal(h));
            for (int i = 1; i <= dim; ++i)
                out.children.push_back(rewrite(n.children[static_cast<std::size_t>(i)],
                                               restrict(live, i, 1 - h.get(i))));
            return out;
        }
        int i = n.query.coordinate;
        Node low = rewrite(n.children[0], restrict(live, i, 0));
        Node high = rewrite(n.children[1], restrict(live, i, 1));
        return splice(low, high, live);
    }
};

}  // namespace

DecisionTree to_proper_only(const InformationSystem& sys, const Problem& z,
                            const DecisionTree& m5_tree) {
    if (!verify_solves(sys, z, m5_tree, QueryModel::m5))
        throw StructureError("to_proper_only: input tree does not solve under m5");
    TupleSet delta = solution_set(sys, z);
    ProperRewriter rw{&delta, z.dim()};
    return DecisionTree{rw.rewrite(m5_tree.root, delta)};
}

// ---------------------------------------------------------------------------
// k_system_tree

namespace {

struct KSystemBuilder {
    const InformationSystem* sys;
    const Problem* z;
    int r;
    KLevelCache* levels;

    DynBitset side(const DynBitset& live, int coord, int value) const {
        std::size_t attr = z->attrs[static_cast<std::size_t>(coord - 1)];
        DynBitset out = live;
        if (value)
            out &= sys->ones(attr);
        else
            out.andnot(sys->ones(attr));
        return out;
    }

    // Smallest coordinate subset whose equations (at h's values) are
    // unsatisfiable within live; sizes 1..r only.
    std::vector<int> inconsistent_core(const DynBitset& live, const Tuple& h) const {
        int dim = z->dim();
        std::vector<int> comb;
        for (int k = 1; k <= r && k <= dim; ++k) {
            comb.assign(static_cast<std::size_t>(k), 0);
            for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i + 1;
            while (true) {
                DynBitset cur = live;
                for (int c : comb) cur = side(cur, c, h.get(c));
                if (cur.none()) return comb;
                int i = k - 1;
                while (i >= 0 && comb[static_cast<std::size_t>(i)] == dim - (k - 1 - i)) --i;
                if (i < 0) break;
                ++comb[static_cast<std::size_t>(i)];
                for (int j = i + 1; j < k; ++j)
                    comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
            }
        }
        throw CertificateError("k_system_tree: no inconsistent core of size <= r; "
                               "instance is not " + std::to_string(r) + "-i-reduced");
    }

    Node build(const DynBitset& live) const {
        int dim = z->dim();
        if (live.none()) return vacuous_terminal(dim);
        int k = levels->level(live);
        if (k == 0) return terminal(z->row(live.first()));

        // Per coordinate, the smallest value whose counterexample side drops
        // the level.
        Tuple h = Tuple::zeros(dim);
        for (int i = 1; i <= dim; ++i) {
            if (levels->level(side(live, i, 1)) < k) continue;  // keep 0
            if (levels->level(side(live, i, 0)) < k) {
                h = h.with(i, 1);
                continue;
            }
            throw StructureError("k_system_tree: no level-dropping value; "
                                 "k-level bookkeeping is broken");
        }

        DynBitset matching = live;
        for (int i = 1; i <= dim; ++i) matching = side(matching, i, h.get(i));
        if (matching.any()) {
            Node n{Query::hyp(h), {}, {}};
            n.children.push_back(terminal(h));
            for (int i = 1; i <= dim; ++i) {
                DynBitset s = side(live, i, 1 - h.get(i));
                n.children.push_back(s.none() ? vacuous_terminal(dim) : build(s));
            }
            return n;
        }

        std::vector<int> core = inconsistent_core(live, h);
        std::vector<Node> grafts;
        for (std::size_t j = 0; j < core.size(); ++j) {
            DynBitset s = side(live, core[j], 1 - h.get(core[j]));
            grafts.push_back(s.none() ? vacuous_terminal(dim) : build(s));
        }
        // Cascade leaves pick the subtree of the first coordinate answered
        // against h.
        return cascade(h, core, 0, {}, grafts, dim);
    }

    Node cascade(const Tuple& h, const std::vector<int>& core, std::size_t pos,
                 std::vector<int> path, const std::vector<Node>& grafts, int dim) const {
        if (pos == core.size()) {
            for (std::size_t j = 0; j < core.size(); ++j)
                if (path[j] != h.get(core[j])) return grafts[j];
            return vacuous_terminal(dim);  // full match: unsatisfiable path
        }
        Node n{Query::attribute(core[pos]), {}, {}};
        for (int v = 0; v <= 1; ++v) {
            auto next = path;
            next.push_back(v);
            n.children.push_back(cascade(h, core, pos + 1, std::move(next), grafts, dim));
        }
        return n;
    }
};

}  // namespace

DecisionTree k_system_tree(const InformationSystem& sys, const Problem& z,
                           const ReducednessCertificate& cert, int* k_out) {
    if (cert.kind != ReducednessCertificate::Kind::i_reduced)
        throw StructureError("k_system_tree needs an i-reduced certificate");
    KLevelCache levels(sys);
    if (k_out) *k_out = levels.level();
    KSystemBuilder b{&sys, &z, cert.r, &levels};
    return DecisionTree{b.build(sys.all_elements())};
}

// ---------------------------------------------------------------------------
// d-complete trees

std::vector<std::size_t> DCompleteTree::attributes() const {
    std::vector<std::size_t> out;
    auto walk = [&](auto&& self, const Node& n) -> void {
        if (n.is_leaf()) return;
        out.push_back(n.attr);
        for (const auto& c : n.children) self(self, c);
    };
    walk(walk, root);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

struct DCompleteSearch {
    const InformationSystem* sys;
    const std::vector<std::size_t>* pool;
    // Per remaining depth, live sets known to admit no subtree.
    std::vector<std::unordered_set<DynBitset, DynBitsetHash>> dead;

    std::optional<DCompleteTree::Node> build(const DynBitset& live, int d) {
        if (live.none()) return std::nullopt;  // this path would be inconsistent
        if (d == 0) return DCompleteTree::Node{};
        if (dead.size() <= static_cast<std::size_t>(d))
            dead.resize(static_cast<std::size_t>(d) + 1);
        if (dead[static_cast<std::size_t>(d)].count(live)) return std::nullopt;
        for (auto attr : *pool) {
            DynBitset one = live & sys->ones(attr);
            DynBitset zero = live;
            zero.andnot(sys->ones(attr));
            if (one.none() || zero.none()) continue;
            auto l = build(zero, d - 1);
            if (!l) continue;
            auto r = build(one, d - 1);
            if (!r) continue;
            DCompleteTree::Node n{attr, {}};
            n.children.push_back(std::move(*l));
            n.children.push_back(std::move(*r));
            return n;
        }
        dead[static_cast<std::size_t>(d)].insert(live);
        return std::nullopt;
    }
};

}  // namespace

std::optional<DCompleteTree> find_d_complete_tree(const InformationSystem& sys,
                                                  const std::vector<std::size_t>& pool,
                                                  int d) {
    if (d < 1) throw StructureError("d-complete trees need d >= 1");
    for (auto a : pool)
        if (a >= sys.attribute_count())
            throw StructureError("pool references an invalid attribute index");
    DCompleteSearch search{&sys, &pool, {}};
    auto root = search.build(sys.all_elements(), d);
    if (!root) return std::nullopt;
    return DCompleteTree{std::move(*root), d};
}

namespace {

void check_d_complete_node(const InformationSystem& sys, const DCompleteTree::Node& n,
                           const DynBitset& live, int remaining) {
    if (n.is_leaf()) {
        if (remaining != 0)
            throw StructureError("d-complete tree has a short path");
        if (live.none())
            throw StructureError("d-complete tree has an inconsistent path");
        return;
    }
    if (remaining == 0) throw StructureError("d-complete tree has a long path");
    if (n.attr >= sys.attribute_count() || n.children.size() != 2)
        throw StructureError("malformed d-complete tree node");
    DynBitset one = live & sys.ones(n.attr);
    DynBitset zero = live;
    zero.andnot(sys.ones(n.attr));
    check_d_complete_node(sys, n.children[0], zero, remaining - 1);
    check_d_complete_node(sys, n.children[1], one, remaining - 1);
}

}  // namespace

int lower_bound_h2(const InformationSystem& sys, const Problem& z, const DCompleteTree& g) {
    check_d_complete_node(sys, g.root, sys.all_elements(), g.d);
    for (auto attr : g.attributes())
        if (std::find(z.attrs.begin(), z.attrs.end(), attr) == z.attrs.end())
            throw StructureError("d-complete tree uses an attribute outside the problem");
    return g.d;
}

std::string to_dot(const DCompleteTree& g, const InformationSystem& sys) {
    std::ostringstream os;
    os << "digraph d_complete_tree {\n";
    int next_id = 0;
    auto walk = [&](auto&& self, const DCompleteTree::Node& n) -> int {
        int id = next_id++;
        if (n.is_leaf()) {
            os << "  n" << id << " [shape=point];\n";
            return id;
        }
        os << "  n" << id << " [label=\"" << sys.attribute_name(n.attr) << "\"];\n";
        for (int v = 0; v <= 1; ++v) {
            int child = self(self, n.children[static_cast<std::size_t>(v)]);
            os << "  n" << id << " -> n" << child << " [label=\""
               << sys.attribute_name(n.attr) << "=" << v << "\"];\n";
        }
        return id;
    };
    walk(walk, g.root);
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// minimal_inconsistent_witness

std::optional<InconsistentWitness> minimal_inconsistent_witness(
    const InformationSystem& sys, const std::vector<std::size_t>& pool, int size_cap) {
    std::vector<Equation> literals;  // attribute-major, value-minor
    for (auto a : pool) {
        if (a >= sys.attribute_count())
            throw StructureError("pool references an invalid attribute index");
        literals.push_back(Equation{a, 0});
        literals.push_back(Equation{a, 1});
    }
    int max_size = std::min<int>(size_cap, static_cast<int>(literals.size()));
    for (int s = max_size; s >= 1; --s) {
        std::vector<std::size_t> comb(static_cast<std::size_t>(s));
        for (int i = 0; i < s; ++i) comb[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
        while (true) {
            EquationSystem cand;
            for (auto idx : comb) cand.eqs.push_back(literals[idx]);
            if (!is_consistent(sys, cand) &&
                min_inconsistent_subsystem(sys, cand).eqs.size() == cand.eqs.size()) {
                InconsistentWitness w;
                w.system = cand;
                for (const auto& eq : cand.eqs) w.attrs.push_back(eq.attr);
                return w;
            }
            int i = s - 1;
            while (i >= 0 && comb[static_cast<std::size_t>(i)] ==
                                 literals.size() - static_cast<std::size_t>(s - i))
                --i;
            if (i < 0) break;
            ++comb[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < s; ++j)
                comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return std::nullopt;
}

}  // namespace hyptree
