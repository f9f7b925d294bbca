#include "cylpos/text_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "cylpos/errors.hpp"

namespace cylpos {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        std::istringstream is{std::string(raw)};
        Line line{number, {}};
        for (std::string tok; is >> tok;) line.tokens.push_back(tok);
        if (!line.tokens.empty()) out.push_back(std::move(line));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return out;
}

Rational rational_at(const Line& line, const std::string& tok) {
    try {
        return Rational::parse(tok);
    } catch (const std::invalid_argument& e) {
        throw ParseError(line.number, e.what());
    }
}

std::uint64_t unsigned_at(const Line& line, const std::string& tok, const char* what) {
    std::uint64_t v = 0;
    const auto* first = tok.data();
    const auto* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || tok.empty() || tok.front() == '+')
        throw ParseError(line.number, std::string("expected ") + what + ", got '" + tok + "'");
    return v;
}

long signed_at(const Line& line, const std::string& tok, const char* what) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty())
        throw ParseError(line.number, std::string("expected ") + what + ", got '" + tok + "'");
    return v;
}

void expect_count(const Line& line, std::size_t lo, std::size_t hi) {
    if (line.tokens.size() < lo || line.tokens.size() > hi)
        throw ParseError(line.number, "unexpected number of fields in '" + line.tokens.front() + "' line");
}

std::size_t column_index(const Line& line, const std::string& tok) {
    const auto v = unsigned_at(line, tok, "a 1-based column index");
    if (v == 0) throw ParseError(line.number, "column indices start at 1");
    return static_cast<std::size_t>(v - 1);
}

}  // namespace

Matrix parse_matrix(std::string_view text) {
    const auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, "empty matrix file");
    const Line& head = lines.front();
    if (head.tokens.size() != 2) throw ParseError(head.number, "header must be 'm n'");
    const auto m = unsigned_at(head, head.tokens[0], "row count");
    const auto n = unsigned_at(head, head.tokens[1], "column count");
    if (m == 0 || n == 0) throw ParseError(head.number, "matrix dimensions must be positive");
    if (lines.size() - 1 != m)
        throw ParseError(lines.size() > m ? lines[m + 1].number : lines.back().number,
                         "expected " + std::to_string(m) + " rows, found " + std::to_string(lines.size() - 1));
    Matrix out(m, n);
    for (std::size_t r = 0; r < m; ++r) {
        const Line& line = lines[r + 1];
        if (line.tokens.size() != n)
            throw ParseError(line.number, "expected " + std::to_string(n) + " entries, found " +
                                              std::to_string(line.tokens.size()));
        for (std::size_t c = 0; c < n; ++c) out(r, c) = rational_at(line, line.tokens[c]);
    }
    return out;
}

std::string format_matrix(const Matrix& m) {
    std::ostringstream os;
    os << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
        os << '\n';
    }
    return os.str();
}

Certificate parse_certificate(std::string_view text) {
    const auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, "empty certificate file");
    const Line& head = lines.front();
    if (head.tokens.size() != 2 || head.tokens[0] != "rows") throw ParseError(head.number, "header must be 'rows m'");
    Certificate c;
    c.m = unsigned_at(head, head.tokens[1], "row count");
    if (c.m == 0) throw ParseError(head.number, "row count must be positive");
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const Line& line = lines[k];
        const std::string& word = line.tokens[0];
        if (word == "join") {
            expect_count(line, 2, 2);
            c.ops.push_back(Join{column_index(line, line.tokens[1])});
        } else if (word == "double") {
            expect_count(line, 2, 2);
            c.ops.push_back(Double{column_index(line, line.tokens[1])});
        } else if (word == "shift") {
            expect_count(line, 1, 1);
            c.ops.push_back(Shift{});
        } else if (word == "rescale") {
            expect_count(line, 3, 3);
            Rational a = rational_at(line, line.tokens[2]);
            if (a.sign() < 0) throw ParseError(line.number, "rescale factor must be nonnegative");
            c.ops.push_back(Rescale{column_index(line, line.tokens[1]), std::move(a)});
        } else {
            throw ParseError(line.number, "unknown operation '" + word + "'");
        }
    }
    return c;
}

std::string format_certificate(const Certificate& c) {
    std::ostringstream os;
    os << "rows " << c.m << '\n';
    for (const auto& op : c.ops) os << to_string(op) << '\n';
    return os.str();
}

CylNetwork parse_network(std::string_view text) {
    const auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, "empty network file");
    const Line& head = lines.front();
    if (head.tokens.size() != 3 || head.tokens[0] != "cylinder")
        throw ParseError(head.number, "header must be 'cylinder S K'");
    const auto want_sources = unsigned_at(head, head.tokens[1], "source count");
    const auto want_sinks = unsigned_at(head, head.tokens[2], "sink count");

    CylNetwork n;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const Line& line = lines[k];
        const std::string& word = line.tokens[0];
        if (word == "source" || word == "sink") {
            expect_count(line, 2, 3);
            BoundaryVertex v{unsigned_at(line, line.tokens[1], "vertex id"), std::nullopt};
            if (line.tokens.size() == 3) v.angle = rational_at(line, line.tokens[2]);
            (word == "source" ? n.sources : n.sinks).push_back(v);
        } else if (word == "vertex") {
            expect_count(line, 3, 4);
            InteriorVertex v{unsigned_at(line, line.tokens[1], "vertex id"), rational_at(line, line.tokens[2]),
                             std::nullopt};
            if (line.tokens.size() == 4) v.angle = rational_at(line, line.tokens[3]);
            n.interior.push_back(v);
        } else if (word == "edge") {
            if (line.tokens.size() < 4) throw ParseError(line.number, "edge needs FROM TO WEIGHT");
            Edge e;
            e.from = unsigned_at(line, line.tokens[1], "vertex id");
            e.to = unsigned_at(line, line.tokens[2], "vertex id");
            e.weight = rational_at(line, line.tokens[3]);
            std::size_t t = 4;
            if (t < line.tokens.size() && line.tokens[t] == "wind") {
                if (t + 1 >= line.tokens.size()) throw ParseError(line.number, "wind needs an integer");
                e.wind = signed_at(line, line.tokens[t + 1], "winding number");
                t += 2;
            }
            if (t < line.tokens.size() && line.tokens[t] == "via") {
                for (++t; t < line.tokens.size(); ++t) {
                    const std::string& tok = line.tokens[t];
                    const auto colon = tok.find(':');
                    if (colon == std::string::npos) throw ParseError(line.number, "waypoint must be LAYER:ANGLE");
                    e.via.push_back({rational_at(line, tok.substr(0, colon)), rational_at(line, tok.substr(colon + 1))});
                }
            }
            if (t != line.tokens.size())
                throw ParseError(line.number, "unexpected field '" + line.tokens[t] + "' in edge line");
            n.edges.push_back(std::move(e));
        } else {
            throw ParseError(line.number, "unknown line kind '" + word + "'");
        }
    }
    if (n.sources.size() != want_sources)
        throw ParseError(head.number, "header announces " + std::to_string(want_sources) + " sources, found " +
                                          std::to_string(n.sources.size()));
    if (n.sinks.size() != want_sinks)
        throw ParseError(head.number, "header announces " + std::to_string(want_sinks) + " sinks, found " +
                                          std::to_string(n.sinks.size()));
    return n;
}

std::string format_network(const CylNetwork& n) {
    std::ostringstream os;
    os << "cylinder " << n.sources.size() << ' ' << n.sinks.size() << '\n';
    for (const auto& v : n.sources) {
        os << "source " << v.id;
        if (v.angle) os << ' ' << *v.angle;
        os << '\n';
    }
    for (const auto& v : n.sinks) {
        os << "sink " << v.id;
        if (v.angle) os << ' ' << *v.angle;
        os << '\n';
    }
    std::vector<const InteriorVertex*> sorted;
    for (const auto& v : n.interior) sorted.push_back(&v);
    std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) { return a->id < b->id; });
    for (const auto* v : sorted) {
        os << "vertex " << v->id << ' ' << v->layer;
        if (v->angle) os << ' ' << *v->angle;
        os << '\n';
    }
    for (const auto& e : n.edges) {
        os << "edge " << e.from << ' ' << e.to << ' ' << e.weight;
        if (e.wind != 0) os << " wind " << e.wind;
        if (!e.via.empty()) {
            os << " via";
            for (const auto& w : e.via) os << ' ' << w.layer << ':' << w.angle;
        }
        os << '\n';
    }
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << contents;
    if (!out) throw InputError("write to '" + path + "' failed");
}

}  // namespace cylpos
