#include "hyptree/table.hpp"

#include <algorithm>
#include <unordered_set>

namespace hyptree {

Tuple Tuple::parse(const std::string& s) {
    if (s.empty() || s.size() > kMaxWidth)
        throw StructureError("tuple literal has unsupported width: '" + s + "'");
    Tuple t{static_cast<int>(s.size()), 0};
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '0' && s[i] != '1')
            throw StructureError("tuple literal must be over {0,1}: '" + s + "'");
        if (s[i] == '1') t.bits |= std::uint64_t{1} << (s.size() - 1 - i);
    }
    return t;
}

InformationSystem::InformationSystem(
    std::vector<std::string> universe,
    std::vector<std::pair<std::string, std::vector<int>>> columns)
    : universe_(std::move(universe)) {
    if (universe_.empty()) throw StructureError("universe must be nonempty");
    if (columns.empty()) throw StructureError("at least one attribute is required");
    std::unordered_set<std::string> ids(universe_.begin(), universe_.end());
    if (ids.size() != universe_.size())
        throw StructureError("universe element ids must be unique");
    std::unordered_set<std::string> seen;
    for (auto& [name, col] : columns) {
        if (!seen.insert(name).second)
            throw StructureError("duplicate attribute name: " + name);
        if (col.size() != universe_.size())
            throw StructureError("column length mismatch for attribute " + name);
        DynBitset bits(universe_.size());
        for (std::size_t e = 0; e < col.size(); ++e) {
            if (col[e] != 0 && col[e] != 1)
                throw StructureError("attribute " + name + " has a non-binary entry");
            if (col[e]) bits.set(e);
        }
        names_.push_back(name);
        columns_.push_back(std::move(bits));
    }
}

std::optional<std::size_t> InformationSystem::attribute_index(const std::string& name) const {
    for (std::size_t a = 0; a < names_.size(); ++a)
        if (names_[a] == name) return a;
    return std::nullopt;
}

Problem::Problem(const InformationSystem& s, std::vector<std::size_t> a)
    : sys(&s), attrs(std::move(a)) {
    if (attrs.empty()) throw StructureError("problem dimension must be at least 1");
    if (attrs.size() > Tuple::kMaxWidth)
        throw StructureError("problem dimension exceeds the supported maximum of 64");
    for (auto idx : attrs)
        if (idx >= s.attribute_count())
            throw StructureError("problem references an invalid attribute index");
}

Problem Problem::all_attributes(const InformationSystem& s) {
    std::vector<std::size_t> idx(s.attribute_count());
    for (std::size_t a = 0; a < idx.size(); ++a) idx[a] = a;
    return Problem(s, std::move(idx));
}

Tuple Problem::row(std::size_t elem) const {
    if (elem >= sys->universe_size()) throw StructureError("unknown universe element");
    Tuple t{dim(), 0};
    for (int i = 1; i <= dim(); ++i)
        if (sys->value(attrs[static_cast<std::size_t>(i - 1)], elem)) t = t.with(i, 1);
    return t;
}

DynBitset solutions(const InformationSystem& sys, const EquationSystem& s) {
    DynBitset live = sys.all_elements();
    for (const auto& eq : s.eqs) {
        if (eq.attr >= sys.attribute_count())
            throw StructureError("equation references an invalid attribute index");
        if (eq.value != 0 && eq.value != 1)
            throw StructureError("equation value must be 0 or 1");
        live &= sys.elements_where(eq.attr, eq.value);
    }
    return live;
}

bool is_consistent(const InformationSystem& sys, const EquationSystem& s) {
    return solutions(sys, s).any();
}

std::string to_string(const InformationSystem& sys, const EquationSystem& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.eqs.size(); ++i) {
        if (i) out += ", ";
        out += sys.attribute_name(s.eqs[i].attr) + "=" + std::to_string(s.eqs[i].value);
    }
    return out + "}";
}

TupleSet::TupleSet(int width, std::vector<std::uint64_t> values)
    : width_(width), vals_(std::move(values)) {
    std::sort(vals_.begin(), vals_.end());
    vals_.erase(std::unique(vals_.begin(), vals_.end()), vals_.end());
}

bool TupleSet::contains(const Tuple& t) const {
    if (t.width != width_) return false;
    return std::binary_search(vals_.begin(), vals_.end(), t.bits);
}

TupleSet solution_set(const InformationSystem& sys, const Problem& z) {
    std::vector<std::uint64_t> vals;
    vals.reserve(sys.universe_size());
    for (std::size_t e = 0; e < sys.universe_size(); ++e) vals.push_back(z.row(e).bits);
    return TupleSet(z.dim(), std::move(vals));
}

TupleSet restrict(const TupleSet& delta, int coord, int value) {
    if (coord < 1 || coord > delta.width())
        throw StructureError("restrict: coordinate out of range");
    std::vector<std::uint64_t> vals;
    for (std::size_t i = 0; i < delta.size(); ++i) {
        Tuple t = delta.at(i);
        if (t.get(coord) == value) vals.push_back(t.bits);
    }
    return TupleSet(delta.width(), std::move(vals));
}

InformationSystem random_system(std::mt19937_64& rng, std::size_t universe_size,
                                std::size_t attrs) {
    std::vector<std::string> ids;
    for (std::size_t e = 1; e <= universe_size; ++e) ids.push_back("e" + std::to_string(e));
    std::vector<std::pair<std::string, std::vector<int>>> cols;
    std::uniform_int_distribution<int> bit(0, 1);
    for (std::size_t a = 1; a <= attrs; ++a) {
        std::vector<int> col(universe_size);
        for (auto& b : col) b = bit(rng);
        cols.emplace_back("a" + std::to_string(a), std::move(col));
    }
    return InformationSystem(std::move(ids), std::move(cols));
}

}  // namespace hyptree
