#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hyptree/bitset.hpp"
#include "hyptree/errors.hpp"

namespace hyptree {

/// Fixed-width bit tuple, coordinates 1..width. Coordinate 1 is the leading
/// character of the printed form, so ascending numeric order of `bits`
/// equals lexicographic order of the printed tuples.
struct Tuple {
    int width = 0;
    std::uint64_t bits = 0;

    static constexpr int kMaxWidth = 64;

    int get(int coord) const { return static_cast<int>((bits >> (width - coord)) & 1); }
    Tuple with(int coord, int value) const {
        Tuple t = *this;
        std::uint64_t m = std::uint64_t{1} << (width - coord);
        if (value)
            t.bits |= m;
        else
            t.bits &= ~m;
        return t;
    }
    static Tuple zeros(int width) { return Tuple{width, 0}; }

    std::string str() const {
        std::string s(static_cast<std::size_t>(width), '0');
        for (int i = 1; i <= width; ++i)
            if (get(i)) s[static_cast<std::size_t>(i - 1)] = '1';
        return s;
    }
    static Tuple parse(const std::string& s);

    friend bool operator==(const Tuple&, const Tuple&) = default;
    friend auto operator<=>(const Tuple& a, const Tuple& b) {
        if (auto c = a.width <=> b.width; c != 0) return c;
        return a.bits <=> b.bits;
    }
};

/// Finite binary information system: an ordered universe of elements and an
/// ordered list of named binary attributes (columns).
class InformationSystem {
public:
    /// Columns are given as 0/1 vectors over the universe, in universe order.
    InformationSystem(std::vector<std::string> universe,
                      std::vector<std::pair<std::string, std::vector<int>>> columns);

    std::size_t universe_size() const { return universe_.size(); }
    std::size_t attribute_count() const { return names_.size(); }
    const std::string& element_id(std::size_t e) const { return universe_[e]; }
    const std::string& attribute_name(std::size_t a) const { return names_[a]; }
    std::optional<std::size_t> attribute_index(const std::string& name) const;

    int value(std::size_t attr, std::size_t elem) const {
        return columns_[attr].test(elem) ? 1 : 0;
    }
    /// Elements where the attribute equals `v`.
    DynBitset elements_where(std::size_t attr, int v) const {
        return v ? columns_[attr] : columns_[attr].flipped();
    }
    const DynBitset& ones(std::size_t attr) const { return columns_[attr]; }
    DynBitset all_elements() const { return DynBitset(universe_.size(), true); }

    bool constant_on(std::size_t attr, const DynBitset& live) const {
        return !live.intersects(columns_[attr]) || live.is_subset_of(columns_[attr]);
    }

private:
    std::vector<std::string> universe_;
    std::vector<std::string> names_;
    std::vector<DynBitset> columns_;
};

/// A problem z = (f_1, ..., f_n): an ordered selection of attribute indices.
/// Repeats are allowed and contribute duplicate coordinates.
struct Problem {
    const InformationSystem* sys = nullptr;
    std::vector<std::size_t> attrs;

    Problem(const InformationSystem& s, std::vector<std::size_t> a);
    /// Problem over every attribute of the system, in table order.
    static Problem all_attributes(const InformationSystem& s);

    int dim() const { return static_cast<int>(attrs.size()); }
    /// The row z(a) of an element.
    Tuple row(std::size_t elem) const;
};

struct Equation {
    std::size_t attr = 0;
    int value = 0;
    friend bool operator==(const Equation&, const Equation&) = default;
};

/// A system of equations {g_1(x)=d_1, ..., g_m(x)=d_m}; may be empty, may
/// repeat attributes.
struct EquationSystem {
    std::vector<Equation> eqs;
    friend bool operator==(const EquationSystem&, const EquationSystem&) = default;
};

/// Solution set on the universe; the empty system solves to the whole universe.
DynBitset solutions(const InformationSystem& sys, const EquationSystem& s);
bool is_consistent(const InformationSystem& sys, const EquationSystem& s);

std::string to_string(const InformationSystem& sys, const EquationSystem& s);

/// Set of n-bit tuples, kept sorted and duplicate-free.
class TupleSet {
public:
    TupleSet() = default;
    TupleSet(int width, std::vector<std::uint64_t> values);

    int width() const { return width_; }
    std::size_t size() const { return vals_.size(); }
    bool empty() const { return vals_.empty(); }
    bool contains(const Tuple& t) const;
    Tuple at(std::size_t i) const { return Tuple{width_, vals_[i]}; }
    const std::vector<std::uint64_t>& values() const { return vals_; }

    friend bool operator==(const TupleSet&, const TupleSet&) = default;

private:
    int width_ = 0;
    std::vector<std::uint64_t> vals_;
};

/// The set of realized rows of z over the universe (all possible solutions).
TupleSet solution_set(const InformationSystem& sys, const Problem& z);

/// Members of `delta` whose coordinate `coord` equals `value`.
TupleSet restrict(const TupleSet& delta, int coord, int value);

/// Uniformly random table: `attrs` iid random columns over `universe_size`
/// elements. Constant and duplicate columns are allowed on purpose.
InformationSystem random_system(std::mt19937_64& rng, std::size_t universe_size,
                                std::size_t attrs);

}  // namespace hyptree
