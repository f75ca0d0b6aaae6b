#pragma once

#include <string>
#include <vector>

#include "hyptree/classify.hpp"
#include "hyptree/table.hpp"

namespace hyptree {

/// Finite instantiations of the seven reference systems, one per complexity
/// class V1..V7:
///   u1(n): universe {1..n}, all 2^n distinct columns (n <= 4)
///   u2(n): universe = all n-bit strings, coordinate projections (n <= 12)
///   u3(n): universe {1..n+1}, point attributes p_i and cut attributes l_i
///   u4(n): universe {1..n+1}^2, row cuts f_i and cell indicators f_i_j (i,j <= n)
///   u5(n): universe of staircase cells (i,j), j <= i <= n, row and cell indicators
///   u6(n): universe {1..n+1}, point attributes p_i only
///   u7(n): universe {1..n+1}, cut attributes l_i only
enum class CanonicalKind { u1, u2, u3, u4, u5, u6, u7 };

const char* to_string(CanonicalKind kind);
CanonicalKind canonical_kind_from_string(const std::string& s);

InformationSystem canonical_system(CanonicalKind kind, int n);

/// Size at which lemma_witnesses can pin the full indicator row for a kind.
int recommended_witness_size(CanonicalKind kind);

struct WitnessCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct LemmaWitnessReport {
    CanonicalKind kind;
    int n = 0;
    std::vector<WitnessCheck> checks;
    bool all_ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
};

/// Re-derives each reference system's finite evidence: its minimal
/// inconsistent or irreducible families, reducedness sweeps, k-level,
/// independence dimension, d-complete trees, and the indicator row estimate.
LemmaWitnessReport lemma_witnesses(CanonicalKind kind, int n);

}  // namespace hyptree
