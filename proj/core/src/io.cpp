#include "hyptree/io.hpp"

#include <fstream>
#include <sstream>

#include "hyptree/errors.hpp"

namespace hyptree {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

InformationSystem read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty table: missing header");
    auto header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "element")
        throw ParseError("header must be 'element,<attr1>,...'");

    std::vector<std::string> ids;
    std::vector<std::vector<int>> cols(header.size() - 1);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw ParseError("line " + std::to_string(lineno) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        ids.push_back(fields[0]);
        for (std::size_t a = 1; a < fields.size(); ++a) {
            if (fields[a] != "0" && fields[a] != "1")
                throw ParseError("line " + std::to_string(lineno) + ": entry '" +
                                 fields[a] + "' is not 0 or 1");
            cols[a - 1].push_back(fields[a] == "1" ? 1 : 0);
        }
    }

    std::vector<std::pair<std::string, std::vector<int>>> named;
    for (std::size_t a = 0; a < cols.size(); ++a)
        named.emplace_back(header[a + 1], std::move(cols[a]));
    try {
        return InformationSystem(std::move(ids), std::move(named));
    } catch (const StructureError& e) {
        throw ParseError(std::string("invalid table: ") + e.what());
    }
}

InformationSystem read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open table file: " + path);
    return read_csv(in);
}

void write_csv(const InformationSystem& sys, std::ostream& out) {
    out << "element";
    for (std::size_t a = 0; a < sys.attribute_count(); ++a)
        out << ',' << sys.attribute_name(a);
    out << '\n';
    for (std::size_t e = 0; e < sys.universe_size(); ++e) {
        out << sys.element_id(e);
        for (std::size_t a = 0; a < sys.attribute_count(); ++a)
            out << ',' << sys.value(a, e);
        out << '\n';
    }
}

std::string to_csv(const InformationSystem& sys) {
    std::ostringstream os;
    write_csv(sys, os);
    return os.str();
}

}  // namespace hyptree
