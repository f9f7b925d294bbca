#include <doctest.h>

#include "cylpos/errors.hpp"
#include "cylpos/oracle.hpp"
#include "cylpos/text_io.hpp"

using namespace cylpos;

namespace {

std::size_t parse_error_line(const auto& parse, const std::string& text) {
    try {
        (void)parse(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST_CASE("matrix format") {
    const Matrix m = parse_matrix("# comment\n2 3\n1 0 1/2\n0 -4/6 3  # trailing\n");
    CHECK(m == Matrix::from_rows({{1, 0, Rational(1, 2)}, {0, Rational(-2, 3), 3}}));
    CHECK(format_matrix(m) == "2 3\n1 0 1/2\n0 -2/3 3\n");
    CHECK(parse_matrix(format_matrix(m)) == m);
}

TEST_CASE("matrix format errors carry line numbers") {
    auto p = [](const std::string& t) { return parse_matrix(t); };
    CHECK(parse_error_line(p, "2 2\n1 1/0\n0 1\n") == 2);
    CHECK(parse_error_line(p, "2 2\n1 0\n0\n") == 3);
    CHECK(parse_error_line(p, "2 2\n1 0\n") == 2);
    CHECK(parse_error_line(p, "2 2\n1 0\n0 1\n1 1\n") == 4);
    CHECK(parse_error_line(p, "x 2\n") == 1);
    CHECK(parse_error_line(p, "") == 1);
    CHECK(parse_error_line(p, "0 2\n") == 1);
}

TEST_CASE("certificate format") {
    const Certificate c = parse_certificate("rows 3\ndouble 1\nshift\nrescale 2 3/4\njoin 1\n");
    CHECK(c == Certificate{3, {Double{0}, Shift{}, Rescale{1, Rational(3, 4)}, Join{0}}});
    CHECK(format_certificate(c) == "rows 3\ndouble 1\nshift\nrescale 2 3/4\njoin 1\n");
    CHECK(format_certificate({2, {}}) == "rows 2\n");
    auto p = [](const std::string& t) { return parse_certificate(t); };
    CHECK(parse_error_line(p, "rows 2\njoin 0\n") == 2);
    CHECK(parse_error_line(p, "rows 2\nrescale 1 -1\n") == 2);
    CHECK(parse_error_line(p, "rows 2\nflip 1\n") == 2);
    CHECK(parse_error_line(p, "rows 2\nshift 1\n") == 2);
    CHECK(parse_error_line(p, "cols 2\n") == 1);
}

TEST_CASE("certificates round-trip") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Certificate c = random_certificate(2 + seed % 2, seed % 25, seed);
        CHECK(parse_certificate(format_certificate(c)) == c);
    }
}

TEST_CASE("network format round-trips to canonical form") {
    const std::string text =
        "cylinder 1 2\nsource 1 1/4\nsink 2 2/8\nsink 3 3/4\nvertex 5 1/2 1/4\nvertex 4 1/3 1/4\n"
        "edge 1 4 2\nedge 4 5 1\nedge 5 2 3 wind 1 via 3/4:1/4\nedge 5 3 5\n";
    const CylNetwork n = parse_network(text);
    const std::string canon = format_network(n);
    CHECK(canon.find("sink 2 1/4\n") != std::string::npos);
    CHECK(canon.find("vertex 4 1/3 1/4\nvertex 5 1/2 1/4\n") != std::string::npos);
    CHECK(canon.find("edge 5 2 3 wind 1 via 3/4:1/4\n") != std::string::npos);
    CHECK(format_network(parse_network(canon)) == canon);

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const CylNetwork g = to_network(random_certificate(2 + seed % 2, seed % 20, seed));
        const std::string once = format_network(g);
        CHECK(format_network(parse_network(once)) == once);
        CHECK(boundary_measurements(parse_network(once)) == boundary_measurements(g));
    }
}

TEST_CASE("network format errors") {
    auto p = [](const std::string& t) { return parse_network(t); };
    CHECK(parse_error_line(p, "cylinder 1 1\nsource 1\nsink 2\nedge 1 2\n") == 4);
    CHECK(parse_error_line(p, "cylinder 2 1\nsource 1\nsink 2\nedge 1 2 1\n") == 1);
    CHECK(parse_error_line(p, "cylinder 1 1\nsource 1\nsink 2\nedge 1 2 1 via 1/2\n") == 4);
    CHECK(parse_error_line(p, "cylinder 1 1\nsource 1\nsink 2\nnode 3\n") == 4);
    CHECK(parse_error_line(p, "cylinder 1 1\nsource -1\n") == 2);
    CHECK(parse_error_line(p, "cylinder 1 1\nsource 1\nsink 2\nedge 1 2 1 color red\n") == 4);
}

TEST_CASE("file helpers") {
    CHECK_THROWS_AS(read_file("/nonexistent/cylpos/file"), InputError);
}
