#ifndef CYLPOS_SYNTH_HPP
#define CYLPOS_SYNTH_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cylpos/colops.hpp"
#include "cylpos/matrix.hpp"

namespace cylpos {

enum class WitnessKind { kNegativeEntry, kNegativeOddMinor, kCvarTooLarge, kRankDefect, kWrongShape };

std::string to_string(WitnessKind kind);

/// Why a matrix is rejected. Indices are 0-based; str() prints them 1-based.
struct Witness {
    WitnessKind kind = WitnessKind::kWrongShape;
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    /// Entry or minor value, cvar, or rank, depending on kind.
    Rational value;
    /// kCvarTooLarge only: the value was computed after deleting zero columns.
    bool zero_columns_deleted = false;

    /// "cvar=4", "negative-entry row=1 col=2 value=-1",
    /// "negative-odd-minor cols=1,2,3 value=-1", "rank-defect rank=2", "wrong-shape".
    std::string str() const;
};

/// Re-evaluates the witness against `m`; true if it names a real violation.
bool witness_holds(const Witness& w, const Matrix& m);

struct Verdict {
    std::optional<Certificate> certificate;
    std::optional<Witness> witness;

    bool accepted() const { return certificate.has_value(); }
};

/// v_i = a·v_{i-1} + b·v_{i+1} (cyclic), then v_i is deleted.
struct RemoveColumn {
    std::size_t i = 0;
    Rational a;
    Rational b;
};

/// v_i ← v_i − ε·v_j with j = i±1 (cyclic).
struct SubtractNeighbor {
    std::size_t i = 0;
    std::size_t j = 0;
    Rational epsilon;
};

struct RemoveZeroColumn {
    std::size_t i = 0;
};

using ReductionStep = std::variant<RemoveColumn, SubtractNeighbor, RemoveZeroColumn>;

/// Steps carry `original` to `reduced`; each index refers to the matrix
/// as it was just before that step.
struct ReductionLog {
    Matrix original;
    std::vector<ReductionStep> steps;
    Matrix reduced;
};

/// Applies one step forward. Throws InputError if it does not fit `m`.
Matrix apply_step(const ReductionStep& step, const Matrix& m);

/// Ops that turn the matrix after `step` back into the one before it;
/// `cols_before` is the column count before the step.
std::vector<ColumnOp> replay_step(const ReductionStep& step, std::size_t cols_before);

enum class Comparison { kIPrecJ, kJPrecI, kBoth, kNeither };

/// Zero-support order on cyclically adjacent columns i, j:
/// i ⪯ j when every zero coordinate of v_i is zero in v_j.
Comparison comparable(const Matrix& m, std::size_t i, std::size_t j);

/// Nonnegative a, b with v = a·l + b·r, if v lies in the cone of l and r.
std::optional<std::pair<Rational, Rational>> cone_coefficients(std::span<const Rational> l,
                                                               std::span<const Rational> v,
                                                               std::span<const Rational> r);

struct Removal {
    Matrix reduced;
    RemoveColumn step;
};

/// For 3-row matrices with nonnegative entries and 3×3 minors and rank 3:
/// removes the first column (cyclic order) that lies in the cone of its two
/// neighbours. Returns nothing when every consecutive triple is independent.
std::optional<Removal> remove_dependent_column(const Matrix& m);

struct Subtraction {
    Matrix result;
    Rational epsilon;
};

/// Largest ε keeping v_i − ε·v_j entrywise nonnegative and every 3×3 minor
/// nonnegative. Requires 3 rows, all 3×3 minors positive, and v_i ⪯ v_j.
Subtraction max_epsilon_subtract(const Matrix& m, std::size_t i, std::size_t j);

/// Certificate for a 3×3 matrix with nonnegative entries, positive
/// determinant, and no adjacent ⪯-comparable columns.
Certificate base_case_3x3(const Matrix& m);

/// Certificate for a 2×2 matrix with nonnegative entries and nonzero determinant.
Certificate base_case_2x2(const Matrix& m);

/// Accepts exactly the 2-row matrices that arise from I_2 by column
/// operations: nonnegative entries, rank 2, and cvar 2 once zero columns
/// are deleted. `log`, if given, receives the reduction on accept.
Verdict synthesize_rank2(const Matrix& m, ReductionLog* log = nullptr);

/// Accepts 3-row matrices with nonnegative entries, nonnegative 3×3 minors
/// and rank 3.
Verdict synthesize_rank3(const Matrix& m, ReductionLog* log = nullptr);

/// Dispatches on the row count; throws InputError("unsupported rank class")
/// unless it is 2 or 3.
Verdict decide(const Matrix& m, ReductionLog* log = nullptr);

}  // namespace cylpos

#endif  // CYLPOS_SYNTH_HPP
