#include "d2d/locations.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "d2d/errors.hpp"
#include "d2d/text.hpp"

namespace d2d {

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string_view::npos) comma = line.size();
        out.push_back(line.substr(pos, comma - pos));
        if (comma == line.size()) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

std::vector<LocationRecord> locations_from_string(const std::string& text) {
    std::size_t pos = 0, lineno = 0;
    auto next_line = [&]() -> std::string_view {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string_view line(text.data() + pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = eol + 1;
        ++lineno;
        return line;
    };

    if (text.empty()) throw InvalidParameter("locations csv: empty input");
    if (next_line() != "id,x,y,floor")
        throw InvalidParameter("locations csv line 1: expected header 'id,x,y,floor'");

    std::vector<LocationRecord> out;
    std::unordered_set<std::int64_t> seen;
    while (pos < text.size()) {
        auto line = next_line();
        if (line.empty()) {
            if (pos < text.size())
                throw InvalidParameter("locations csv line " + std::to_string(lineno) +
                                       ": blank line before end of file");
            break;
        }
        const std::string ctx = "locations csv line " + std::to_string(lineno);
        auto fields = split_csv(line);
        if (fields.size() != 4)
            throw InvalidParameter(ctx + ": expected 4 fields, got " +
                                   std::to_string(fields.size()));
        LocationRecord rec;
        rec.id = parse_int(fields[0], ctx);
        rec.x = parse_double(fields[1], ctx);
        rec.y = parse_double(fields[2], ctx);
        rec.floor = static_cast<int>(parse_int(fields[3], ctx));
        if (!seen.insert(rec.id).second)
            throw InvalidParameter(ctx + ": duplicate id " + std::to_string(rec.id));
        out.push_back(rec);
    }
    return out;
}

std::string locations_to_string(const std::vector<LocationRecord>& locs) {
    std::string out = "id,x,y,floor\n";
    for (const auto& r : locs) {
        out += std::to_string(r.id);
        out += ',';
        out += format_double(r.x);
        out += ',';
        out += format_double(r.y);
        out += ',';
        out += std::to_string(r.floor);
        out += '\n';
    }
    return out;
}

std::vector<LocationRecord> load_locations(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InvalidParameter("cannot open '" + path + "'");
    std::string text(std::istreambuf_iterator<char>(is), {});
    return locations_from_string(text);
}

void save_locations(const std::string& path, const std::vector<LocationRecord>& locs) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InvalidParameter("cannot open '" + path + "' for writing");
    os << locations_to_string(locs);
    if (!os) throw InvalidParameter("write failed for '" + path + "'");
}

}  // namespace d2d
