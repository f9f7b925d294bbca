#ifndef CYLPOS_TEXT_IO_HPP
#define CYLPOS_TEXT_IO_HPP

#include <iosfwd>
#include <string>
#include <string_view>

#include "cylpos/colops.hpp"
#include "cylpos/matrix.hpp"
#include "cylpos/network.hpp"

namespace cylpos {

// Line-oriented formats. Blank lines and '#' comments are ignored; every
// parse failure throws ParseError with the 1-based line number.
//
// Matrix:       "m n", then m rows of n tokens "p" or "p/q".
// Certificate:  "rows m", then "join i" | "double i" | "shift" | "rescale i p/q"
//               with 1-based column indices.
// Network:      "cylinder S K", then in any order
//                 source ID [ANGLE]           (S lines, cyclic order)
//                 sink ID [ANGLE]             (K lines, cyclic order)
//                 vertex ID LAYER [ANGLE]
//                 edge FROM TO WEIGHT [wind K] [via LAYER:ANGLE ...]

Matrix parse_matrix(std::string_view text);
std::string format_matrix(const Matrix& m);

Certificate parse_certificate(std::string_view text);
std::string format_certificate(const Certificate& c);

CylNetwork parse_network(std::string_view text);
/// Interior vertices sorted by id; edges in stored order.
std::string format_network(const CylNetwork& n);

/// Whole file as a string; throws InputError if it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace cylpos

#endif  // CYLPOS_TEXT_IO_HPP
