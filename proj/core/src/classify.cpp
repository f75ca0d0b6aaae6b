#include "hyptree/classify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyptree/errors.hpp"

namespace hyptree {

namespace {

// Next size-k index combination in lexicographic order; false when exhausted.
bool next_combination(std::vector<std::size_t>& c, std::size_t pool) {
    std::size_t k = c.size();
    std::size_t i = k;
    while (i-- > 0) {
        if (c[i] != pool - (k - i)) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

void first_combination(std::vector<std::size_t>& c, std::size_t k) {
    c.resize(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = i;
}

}  // namespace

bool is_independent(const InformationSystem& sys, const std::vector<std::size_t>& subset) {
    // All 2^k cells nonempty; split cells one attribute at a time.
    std::vector<DynBitset> cells{sys.all_elements()};
    for (auto a : subset) {
        std::vector<DynBitset> next;
        next.reserve(cells.size() * 2);
        for (const auto& cell : cells) {
            DynBitset one = cell & sys.ones(a);
            DynBitset zero = cell;
            zero.andnot(sys.ones(a));
            if (one.none() || zero.none()) return false;
            next.push_back(std::move(zero));
            next.push_back(std::move(one));
        }
        cells = std::move(next);
    }
    return true;
}

namespace {

// DFS over index-increasing extensions; cells stay nonempty along the way.
void independence_dfs(const InformationSystem& sys, std::vector<DynBitset>& cells,
                      std::vector<std::size_t>& current, std::size_t next_attr,
                      IndependenceResult& best, Budget* budget) {
    if (static_cast<int>(current.size()) > best.dimension) {
        best.dimension = static_cast<int>(current.size());
        best.witness = current;
    }
    for (std::size_t a = next_attr; a < sys.attribute_count(); ++a) {
        if (budget) budget->spend(cells.size());
        std::vector<DynBitset> split;
        split.reserve(cells.size() * 2);
        bool ok = true;
        for (const auto& cell : cells) {
            DynBitset one = cell & sys.ones(a);
            DynBitset zero = cell;
            zero.andnot(sys.ones(a));
            if (one.none() || zero.none()) {
                ok = false;
                break;
            }
            split.push_back(std::move(zero));
            split.push_back(std::move(one));
        }
        if (!ok) continue;
        current.push_back(a);
        independence_dfs(sys, split, current, a + 1, best, budget);
        current.pop_back();
    }
}

}  // namespace

IndependenceResult independence_dimension(const InformationSystem& sys, Budget* budget) {
    IndependenceResult best;  // the empty set is independent by definition
    std::vector<DynBitset> cells{sys.all_elements()};
    std::vector<std::size_t> current;
    independence_dfs(sys, cells, current, 0, best, budget);
    return best;
}

namespace {

EquationSystem subsystem(const EquationSystem& s, const std::vector<std::size_t>& idx) {
    EquationSystem out;
    for (auto i : idx) out.eqs.push_back(s.eqs[i]);
    return out;
}

}  // namespace

EquationSystem min_equivalent_subsystem(const InformationSystem& sys,
                                        const EquationSystem& s) {
    DynBitset target = solutions(sys, s);
    if (target.none()) throw StructureError("min_equivalent_subsystem needs a consistent system");
    for (std::size_t k = 0; k <= s.eqs.size(); ++k) {
        std::vector<std::size_t> comb;
        first_combination(comb, k);
        do {
            EquationSystem cand = subsystem(s, comb);
            if (solutions(sys, cand) == target) return cand;
        } while (next_combination(comb, s.eqs.size()));
    }
    return s;  // unreachable: s itself always qualifies
}

EquationSystem min_inconsistent_subsystem(const InformationSystem& sys,
                                          const EquationSystem& s) {
    if (is_consistent(sys, s))
        throw StructureError("min_inconsistent_subsystem needs an inconsistent system");
    for (std::size_t k = 1; k <= s.eqs.size(); ++k) {
        std::vector<std::size_t> comb;
        first_combination(comb, k);
        do {
            EquationSystem cand = subsystem(s, comb);
            if (!is_consistent(sys, cand)) return cand;
        } while (next_combination(comb, s.eqs.size()));
    }
    return s;  // unreachable
}

namespace {

// Enumerate literal subsets of size 1..cap over the 2m (attribute, value)
// literals and fold each into `fn`. Literal order: attribute-major,
// value-minor.
template <typename Fn>
void sweep_systems(const InformationSystem& sys, int cap, Budget* budget, Fn&& fn) {
    std::size_t literals = 2 * sys.attribute_count();
    for (int k = 1; k <= cap && k <= static_cast<int>(literals); ++k) {
        std::vector<std::size_t> comb;
        first_combination(comb, static_cast<std::size_t>(k));
        do {
            if (budget) budget->spend();
            EquationSystem s;
            for (auto l : comb)
                s.eqs.push_back(Equation{l / 2, static_cast<int>(l % 2)});
            if (!fn(s)) return;
        } while (next_combination(comb, literals));
    }
}

}  // namespace

RCheck check_r_reduced(const InformationSystem& sys, int r, int cap, Budget* budget) {
    RCheck out;
    out.cap = cap;
    sweep_systems(sys, cap, budget, [&](const EquationSystem& s) {
        if (!is_consistent(sys, s)) return true;
        int need = static_cast<int>(min_equivalent_subsystem(sys, s).eqs.size());
        if (need > out.min_r_at_cap) out.min_r_at_cap = need;
        if (need > r && !out.violation) {
            out.holds = false;
            out.violation = s;
        }
        return true;
    });
    return out;
}

RCheck check_r_i_reduced(const InformationSystem& sys, int r, int cap, Budget* budget) {
    RCheck out;
    out.cap = cap;
    sweep_systems(sys, cap, budget, [&](const EquationSystem& s) {
        if (is_consistent(sys, s)) return true;
        int need = static_cast<int>(min_inconsistent_subsystem(sys, s).eqs.size());
        if (need > out.min_r_at_cap) out.min_r_at_cap = need;
        if (need > r && !out.violation) {
            out.holds = false;
            out.violation = s;
        }
        return true;
    });
    return out;
}

int KLevelCache::level() { return level(sys_->all_elements()); }

int KLevelCache::level(const DynBitset& live) {
    if (live.count() <= 1) return 0;
    if (auto it = memo_.find(live); it != memo_.end()) return it->second;
    if (budget_) budget_->spend();
    bool any_split = false;
    int worst = 0;
    for (std::size_t a = 0; a < sys_->attribute_count(); ++a) {
        DynBitset one = live & sys_->ones(a);
        if (one.none() || one == live) continue;  // constant on live
        any_split = true;
        DynBitset zero = live;
        zero.andnot(sys_->ones(a));
        // The attribute contributes min(level(zero), level(one)), which is
        // bounded by the smaller side's level; skip the larger side when the
        // smaller one cannot raise the running maximum.
        bool zero_smaller = zero.count() <= one.count();
        int small = level(zero_smaller ? zero : one);
        if (small <= worst) continue;
        worst = std::max(worst, std::min(small, level(zero_smaller ? one : zero)));
    }
    int result = any_split ? worst + 1 : 0;
    memo_.emplace(live, result);
    return result;
}

KLevelResult k_level(const InformationSystem& sys, int cap, Budget* budget) {
    KLevelCache cache(sys, budget);
    KLevelResult out;
    out.cap = cap;
    out.value = cache.level();
    out.exceeds_cap = out.value > cap;
    return out;
}

namespace {

struct CoverSearch {
    const InformationSystem* sys;
    int size_cap;
    Budget* budget;
    std::vector<DynBitset> violators;  // per literal: elements breaking (attr=value)
    std::vector<EquationSystem> found;
    std::vector<std::size_t> chosen;
    std::vector<int> cover_count;  // per element

    bool redundant(std::size_t lit) const {
        for (std::size_t e = 0; e < cover_count.size(); ++e)
            if (violators[lit].test(e) && cover_count[e] == 1) return false;
        return true;
    }
};

}  // namespace

std::vector<EquationSystem> minimal_inconsistent_systems(const InformationSystem& sys,
                                                         int size_cap, Budget* budget) {
    CoverSearch search;
    search.sys = &sys;
    search.size_cap = size_cap;
    search.budget = budget;
    for (std::size_t a = 0; a < sys.attribute_count(); ++a)
        for (int v = 0; v <= 1; ++v)
            search.violators.push_back(sys.elements_where(a, 1 - v));
    search.cover_count.assign(sys.universe_size(), 0);

    // Branch once per candidate literal for the first uncovered element,
    // excluding earlier candidates below each branch so every irredundant
    // cover is produced exactly once.
    struct Rec {
        CoverSearch* s;
        void go(const DynBitset& covered, std::vector<char>& excluded) {
            if (s->budget) s->budget->spend();
            std::size_t e = covered.flipped().first();
            if (e >= covered.size()) {
                EquationSystem sysOut;
                for (auto l : s->chosen)
                    sysOut.eqs.push_back(Equation{l / 2, static_cast<int>(l % 2)});
                s->found.push_back(std::move(sysOut));
                return;
            }
            if (static_cast<int>(s->chosen.size()) >= s->size_cap) return;
            std::vector<std::size_t> candidates;
            for (std::size_t lit = 0; lit < s->violators.size(); ++lit)
                if (!excluded[lit] && s->violators[lit].test(e)) candidates.push_back(lit);
            for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
                std::size_t lit = candidates[idx];
                s->chosen.push_back(lit);
                for (std::size_t x = 0; x < s->cover_count.size(); ++x)
                    if (s->violators[lit].test(x)) ++s->cover_count[x];
                bool ok = true;
                for (auto l : s->chosen)
                    if (s->redundant(l)) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    std::vector<char> ex = excluded;
                    for (std::size_t j = 0; j < idx; ++j) ex[candidates[j]] = 1;
                    go(covered | s->violators[lit], ex);
                }
                for (std::size_t x = 0; x < s->cover_count.size(); ++x)
                    if (s->violators[lit].test(x)) --s->cover_count[x];
                s->chosen.pop_back();
            }
        }
    };
    std::vector<char> excluded(search.violators.size(), 0);
    Rec{&search}.go(DynBitset(sys.universe_size()), excluded);
    return search.found;
}

ReducednessCertificate certify_i_reduced(const InformationSystem& sys, Budget* budget) {
    auto systems =
        minimal_inconsistent_systems(sys, static_cast<int>(sys.universe_size()), budget);
    ReducednessCertificate cert;
    cert.kind = ReducednessCertificate::Kind::i_reduced;
    std::stable_sort(systems.begin(), systems.end(),
                     [](const EquationSystem& a, const EquationSystem& b) {
                         return a.eqs.size() > b.eqs.size();
                     });
    cert.r = systems.empty() ? 1 : static_cast<int>(systems.front().eqs.size());
    constexpr std::size_t kWitnessCacheCap = 64;
    for (std::size_t i = 0; i < systems.size() && i < kWitnessCacheCap; ++i)
        cert.witnesses.push_back(systems[i]);
    return cert;
}

bool sauer_bound_check(const InformationSystem& sys, const Problem& z, int i_dimension) {
    TupleSet delta = solution_set(sys, z);
    double bound = std::pow(4.0 * z.dim(), i_dimension);
    return static_cast<double>(delta.size()) <= bound;
}

ClassificationReport classify_system(const InformationSystem& sys, const std::string& label,
                                     const ClassifyOptions& opts) {
    Budget budget(opts.budget);
    ClassificationReport rep;
    rep.label = label;
    rep.options = opts;
    rep.universe_size = sys.universe_size();
    rep.attribute_count = sys.attribute_count();
    rep.independence = independence_dimension(sys, &budget);
    rep.r_reduced = check_r_reduced(sys, opts.r_threshold, opts.subsystem_cap, &budget);
    rep.r_i_reduced = check_r_i_reduced(sys, opts.ri_threshold, opts.subsystem_cap, &budget);
    rep.k_level = k_level(sys, opts.k_cap, &budget);

    rep.eind.r = rep.r_reduced.holds;
    rep.eind.d = rep.independence.dimension <= opts.i_dim_threshold;
    rep.eind.c = rep.eind.d && !rep.k_level.exceeds_cap && rep.k_level.value <= opts.k_threshold;
    rep.eind.i = rep.r_i_reduced.holds;

    static const bool kRows[7][4] = {{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 1, 0, 0}, {0, 1, 0, 1},
                                     {0, 1, 1, 0}, {0, 1, 1, 1}, {1, 1, 0, 1}};
    rep.eind.matched_class = "none";
    for (int row = 0; row < 7; ++row) {
        if (kRows[row][0] == rep.eind.r && kRows[row][1] == rep.eind.d &&
            kRows[row][2] == rep.eind.c && kRows[row][3] == rep.eind.i) {
            rep.eind.matched_class = "V" + std::to_string(row + 1);
            break;
        }
    }

    Problem z = Problem::all_attributes(sys);
    TupleSet delta = solution_set(sys, z);
    rep.sauer.delta_size = delta.size();
    rep.sauer.bound = std::pow(4.0 * z.dim(), rep.independence.dimension);
    rep.sauer.ok = static_cast<double>(delta.size()) <= rep.sauer.bound;
    return rep;
}

namespace {

nlohmann::ordered_json equations_json(const EquationSystem& s) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& eq : s.eqs) {
        nlohmann::ordered_json e;
        e["attr"] = eq.attr;
        e["value"] = eq.value;
        arr.push_back(e);
    }
    return arr;
}

}  // namespace

nlohmann::ordered_json to_json(const ClassificationReport& rep) {
    nlohmann::ordered_json j;
    j["label"] = rep.label;
    j["universe_size"] = rep.universe_size;
    j["attribute_count"] = rep.attribute_count;
    j["independence"] = {{"dimension", rep.independence.dimension},
                         {"witness", rep.independence.witness}};
    j["r_reduced"] = {{"cap", rep.r_reduced.cap},
                      {"min_r_at_cap", rep.r_reduced.min_r_at_cap},
                      {"holds_at_threshold", rep.r_reduced.holds}};
    if (rep.r_reduced.violation)
        j["r_reduced"]["violation"] = equations_json(*rep.r_reduced.violation);
    j["r_i_reduced"] = {{"cap", rep.r_i_reduced.cap},
                        {"min_r_at_cap", rep.r_i_reduced.min_r_at_cap},
                        {"holds_at_threshold", rep.r_i_reduced.holds}};
    if (rep.r_i_reduced.violation)
        j["r_i_reduced"]["violation"] = equations_json(*rep.r_i_reduced.violation);
    j["k_level"] = {{"value", rep.k_level.value},
                    {"cap", rep.k_level.cap},
                    {"exceeds_cap", rep.k_level.exceeds_cap}};
    j["eind_estimate"] = {{"r", rep.eind.r},
                          {"d", rep.eind.d},
                          {"c", rep.eind.c},
                          {"i", rep.eind.i},
                          {"class", rep.eind.matched_class}};
    j["thresholds"] = {{"r", rep.options.r_threshold},
                       {"ri", rep.options.ri_threshold},
                       {"i_dim", rep.options.i_dim_threshold},
                       {"k", rep.options.k_threshold},
                       {"subsystem_cap", rep.options.subsystem_cap}};
    j["sauer"] = {{"delta_size", rep.sauer.delta_size},
                  {"bound", rep.sauer.bound},
                  {"ok", rep.sauer.ok}};
    return j;
}

std::string summary(const ClassificationReport& rep) {
    std::ostringstream os;
    os << rep.label << ": universe=" << rep.universe_size
       << " attrs=" << rep.attribute_count << "\n";
    os << "  I=" << rep.independence.dimension << " (witness size "
       << rep.independence.witness.size() << ")\n";
    os << "  min_r at cap " << rep.r_reduced.cap << ": " << rep.r_reduced.min_r_at_cap
       << (rep.r_reduced.holds ? "" : " [not reduced at threshold]") << "\n";
    os << "  min_ri at cap " << rep.r_i_reduced.cap << ": " << rep.r_i_reduced.min_r_at_cap
       << (rep.r_i_reduced.holds ? "" : " [not i-reduced at threshold]") << "\n";
    os << "  k_level=" << rep.k_level.value
       << (rep.k_level.exceeds_cap ? " (exceeds cap)" : "") << "\n";
    os << "  eind=(" << rep.eind.r << "," << rep.eind.d << "," << rep.eind.c << ","
       << rep.eind.i << ") class=" << rep.eind.matched_class << "\n";
    os << "  sauer: |delta|=" << rep.sauer.delta_size << " bound=" << rep.sauer.bound
       << (rep.sauer.ok ? " ok" : " VIOLATED") << "\n";
    return os.str();
}

}  // namespace hyptree
