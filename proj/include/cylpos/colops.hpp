#ifndef CYLPOS_COLOPS_HPP
#define CYLPOS_COLOPS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cylpos/matrix.hpp"
#include "cylpos/network.hpp"

namespace cylpos {

// Column indices in ops are 0-based here; the text formats are 1-based.

/// Columns i and i+1 replaced by their sum at position i.
struct Join {
    std::size_t i = 0;
    friend bool operator==(const Join&, const Join&) = default;
};

/// Column i duplicated; the copy lands at i+1.
struct Double {
    std::size_t i = 0;
    friend bool operator==(const Double&, const Double&) = default;
};

/// Last column moved to the front.
struct Shift {
    friend bool operator==(const Shift&, const Shift&) = default;
};

/// Column i multiplied by a ≥ 0.
struct Rescale {
    std::size_t i = 0;
    Rational a;
    friend bool operator==(const Rescale&, const Rescale&) = default;
};

using ColumnOp = std::variant<Join, Double, Shift, Rescale>;

/// 1-based text form: "join 2", "shift", "rescale 1 3/2".
std::string to_string(const ColumnOp& op);

struct Certificate {
    std::size_t m = 0;
    std::vector<ColumnOp> ops;
    friend bool operator==(const Certificate&, const Certificate&) = default;
};

Matrix apply(const ColumnOp& op, const Matrix& m);

/// Folds apply over c.ops starting from I_m. Errors name the failing step.
Matrix apply_certificate(const Certificate& c);

bool verify_certificate(const Certificate& c, const Matrix& m);

struct CertificateMismatch {
    std::string reason;
};

/// Explains why verify_certificate fails: an invalid step, a shape
/// mismatch, or the first differing entry. Empty when the check passes.
std::optional<CertificateMismatch> explain_mismatch(const Certificate& c, const Matrix& m);

/// Structural op plus column rescalings carrying `before` to `after`, the
/// local moves of a perfect network swept across one layer: Join(i)
/// followed by Rescale(i, λ), Double(i) followed by rescales of both copies,
/// or a cyclic rotation by one column in either direction. Only positive
/// factors are used. Returns nothing if no such move exists.
std::optional<std::vector<ColumnOp>> match_local_move(const Matrix& before, const Matrix& after);

/// Layered network with one layer per op. Rescales are folded into the
/// weight of the strand's next edge; a zero factor kills the strand and
/// everything only it feeds. Fails with InputError if some sink or source
/// would be left without an edge, i.e. the matrix has a zero column or row.
/// The result is embedded: strands occupy evenly spaced angular slots.
CylNetwork to_network(const Certificate& c);

}  // namespace cylpos

#endif  // CYLPOS_COLOPS_HPP
