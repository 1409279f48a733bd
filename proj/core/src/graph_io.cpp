#include "d2d/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "d2d/errors.hpp"
#include "d2d/text.hpp"

namespace d2d {

std::string format_double(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

double parse_double(std::string_view token, const std::string& context) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw InvalidParameter(context + ": bad number '" + std::string(token) + "'");
    return out;
}

std::int64_t parse_int(std::string_view token, const std::string& context) {
    std::int64_t out = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw InvalidParameter(context + ": bad integer '" + std::string(token) + "'");
    return out;
}

std::uint64_t parse_uint(std::string_view token, const std::string& context) {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw InvalidParameter(context + ": bad unsigned integer '" + std::string(token) + "'");
    return out;
}

namespace {

// Splits on single spaces; field count must match exactly.
std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        std::size_t sp = line.find(' ', pos);
        if (sp == std::string_view::npos) sp = line.size();
        out.push_back(line.substr(pos, sp - pos));
        pos = sp + 1;
    }
    return out;
}

std::string line_context(const std::string& what, std::size_t lineno) {
    return what + " line " + std::to_string(lineno);
}

}  // namespace

void write_graph(std::ostream& os, const WeightedGraph& g) {
    os << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& e : g.edges())
        os << e.u << ' ' << e.v << ' ' << format_double(e.w) << '\n';
}

WeightedGraph read_graph(std::istream& is) {
    std::string text(std::istreambuf_iterator<char>(is), {});
    std::size_t pos = 0, lineno = 0;
    auto next_line = [&]() -> std::string_view {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string_view line(text.data() + pos, eol - pos);
        pos = eol + 1;
        ++lineno;
        return line;
    };

    if (pos >= text.size()) throw InvalidParameter("graph file: empty input");
    auto header = split_fields(next_line());
    if (header.size() != 2)
        throw InvalidParameter(line_context("graph file", lineno) + ": expected 'n m' header");
    const auto n = parse_int(header[0], line_context("graph file", lineno));
    const auto m = parse_int(header[1], line_context("graph file", lineno));
    if (n < 0 || m < 0)
        throw InvalidParameter("graph file: negative count in header");

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i) {
        if (pos >= text.size())
            throw InvalidParameter("graph file: expected " + std::to_string(m) + " edges, got " +
                                   std::to_string(i));
        auto fields = split_fields(next_line());
        const auto ctx = line_context("graph file", lineno);
        if (fields.size() != 3)
            throw InvalidParameter(ctx + ": expected 'u v w'");
        Edge e;
        e.u = static_cast<int>(parse_int(fields[0], ctx));
        e.v = static_cast<int>(parse_int(fields[1], ctx));
        e.w = parse_double(fields[2], ctx);
        edges.push_back(e);
    }
    while (pos < text.size()) {
        auto rest = next_line();
        if (!rest.empty())
            throw InvalidParameter(line_context("graph file", lineno) + ": trailing content");
    }
    return WeightedGraph(static_cast<int>(n), std::move(edges));
}

void save_graph(const std::string& path, const WeightedGraph& g) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InvalidParameter("cannot open '" + path + "' for writing");
    write_graph(os, g);
    if (!os) throw InvalidParameter("write failed for '" + path + "'");
}

WeightedGraph load_graph(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InvalidParameter("cannot open '" + path + "'");
    return read_graph(is);
}

std::string graph_to_string(const WeightedGraph& g) {
    std::ostringstream os;
    write_graph(os, g);
    return os.str();
}

WeightedGraph graph_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_graph(is);
}

}  // namespace d2d
