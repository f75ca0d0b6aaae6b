#pragma once

#include <iosfwd>
#include <string>

#include "hyptree/table.hpp"

namespace hyptree {

/// CSV table format: header `element,<attr1>,<attr2>,...`, one row per
/// universe element with entries in {0,1}. UTF-8, LF line endings, no quoting.
InformationSystem read_csv(std::istream& in);
InformationSystem read_csv_file(const std::string& path);

void write_csv(const InformationSystem& sys, std::ostream& out);
std::string to_csv(const InformationSystem& sys);

}  // namespace hyptree
