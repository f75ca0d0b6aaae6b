#pragma once

#include <stdexcept>
#include <string>

namespace hyptree {

/// Invalid structure: malformed tables, problems, trees, or violated
/// operation preconditions.
class StructureError : public std::runtime_error {
public:
    explicit StructureError(const std::string& what) : std::runtime_error(what) {}
};

/// Input text could not be parsed (CSV tables, config values).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A combinatorial budget or hard size cap was exceeded. Never silent:
/// callers either raise the budget or treat the computation as infeasible.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// A reducedness certificate was contradicted at run time, e.g. the halving
/// construction met an inconsistent unbalanced subsystem. Indicates the
/// instance is not r-i-reduced for the claimed r.
class CertificateError : public std::runtime_error {
public:
    explicit CertificateError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hyptree
