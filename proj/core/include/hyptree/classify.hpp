#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "hyptree/bitset.hpp"
#include "hyptree/table.hpp"

namespace hyptree {

/// Shared spend counter for combinatorial searches; throws BudgetError when
/// exhausted.
class Budget {
public:
    explicit Budget(std::uint64_t limit) : remaining_(limit) {}
    void spend(std::uint64_t n = 1) {
        if (n > remaining_) throw BudgetError("combinatorial budget exceeded");
        remaining_ -= n;
    }

private:
    std::uint64_t remaining_;
};

/// A subset of attributes is independent when every value combination is
/// realized by some element.
bool is_independent(const InformationSystem& sys, const std::vector<std::size_t>& subset);

struct IndependenceResult {
    int dimension = 0;
    std::vector<std::size_t> witness;  // a maximum independent subset
};

/// Exact maximum cardinality of an independent attribute subset, with the
/// lexicographically first witness of that size.
IndependenceResult independence_dimension(const InformationSystem& sys,
                                          Budget* budget = nullptr);

/// Minimum-cardinality subsystem with the same solution set (S consistent).
EquationSystem min_equivalent_subsystem(const InformationSystem& sys,
                                        const EquationSystem& s);

/// Minimum-cardinality inconsistent subsystem (S inconsistent).
EquationSystem min_inconsistent_subsystem(const InformationSystem& sys,
                                          const EquationSystem& s);

/// Result of a bounded universal reducedness check: systems of at most `cap`
/// equations over the full attribute pool are enumerated.
struct RCheck {
    bool holds = true;
    int min_r_at_cap = 0;  // max over enumerated systems of the minimal subsystem size
    std::optional<EquationSystem> violation;
    int cap = 0;
};

/// Every consistent system of <= cap equations has an equal-solution
/// subsystem with <= r equations?
RCheck check_r_reduced(const InformationSystem& sys, int r, int cap,
                       Budget* budget = nullptr);

/// Every inconsistent system of <= cap equations has an inconsistent
/// subsystem with <= r equations?
RCheck check_r_i_reduced(const InformationSystem& sys, int r, int cap,
                         Budget* budget = nullptr);

/// Memoized k-level computation over restrictions of the universe.
/// Level 0: every attribute constant on the live set (vacuously, the empty
/// set). Level k+1: some attribute needs it, and every attribute has a value
/// whose restriction drops to level <= k.
class KLevelCache {
public:
    explicit KLevelCache(const InformationSystem& sys, Budget* budget = nullptr)
        : sys_(&sys), budget_(budget) {}
    int level();
    int level(const DynBitset& live);

private:
    const InformationSystem* sys_;
    Budget* budget_;
    std::unordered_map<DynBitset, int, DynBitsetHash> memo_;
};

struct KLevelResult {
    int value = 0;
    int cap = 0;
    bool exceeds_cap = false;
};
KLevelResult k_level(const InformationSystem& sys, int cap = 6, Budget* budget = nullptr);

/// All minimal inconsistent systems of size <= size_cap, in a deterministic
/// order. A system is minimal inconsistent exactly when its equations'
/// violator sets form an irredundant cover of the universe.
std::vector<EquationSystem> minimal_inconsistent_systems(const InformationSystem& sys,
                                                         int size_cap,
                                                         Budget* budget = nullptr);

struct ReducednessCertificate {
    enum class Kind { reduced, i_reduced };
    int r = 1;
    Kind kind = Kind::i_reduced;
    /// Minimal subsystems backing the bound (largest ones first).
    std::vector<EquationSystem> witnesses;
};

/// Exact i-reducedness certificate for a finite table: r is the maximum size
/// of a minimal inconsistent system (every finite table is r-i-reduced for
/// that r, and for no smaller value).
ReducednessCertificate certify_i_reduced(const InformationSystem& sys,
                                         Budget* budget = nullptr);

/// |solution_set(z)| <= (4 * dim z)^i_dimension.
bool sauer_bound_check(const InformationSystem& sys, const Problem& z, int i_dimension);

struct ClassifyOptions {
    int subsystem_cap = 3;  // sweep cap for the r-reduced / r-i-reduced bits
    int k_cap = 6;
    int r_threshold = 2;
    int ri_threshold = 2;
    int i_dim_threshold = 1;
    int k_threshold = 2;
    std::uint64_t budget = 50'000'000;
};

struct ClassificationReport {
    std::string label;
    std::size_t universe_size = 0;
    std::size_t attribute_count = 0;
    IndependenceResult independence;
    RCheck r_reduced;
    RCheck r_i_reduced;
    KLevelResult k_level;
    struct Eind {
        bool r = false, d = false, c = false, i = false;
        std::string matched_class;  // "V1".."V7" or "none"
    } eind;
    struct Sauer {
        std::size_t delta_size = 0;
        double bound = 0.0;
        bool ok = true;
    } sauer;  // for the all-attributes problem
    ClassifyOptions options;
};

/// Finite-scale classification: exact independence dimension and k-level,
/// cap-bounded reducedness sweeps, and a thresholded indicator estimate.
/// The c bit is additionally forced below the d bit, mirroring the
/// containment of the bounded-k-level class in the bounded-dimension class.
ClassificationReport classify_system(const InformationSystem& sys, const std::string& label,
                                     const ClassifyOptions& opts = {});

nlohmann::ordered_json to_json(const ClassificationReport& report);
std::string summary(const ClassificationReport& report);

}  // namespace hyptree
