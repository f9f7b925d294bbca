#ifndef CYLPOS_EXACTMAT_HPP
#define CYLPOS_EXACTMAT_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "cylpos/matrix.hpp"

namespace cylpos {

/// Determinant of the submatrix picked out by `rows` × `cols` (0-based,
/// non-cyclic). Throws InputError on size mismatch, empty selection or
/// out-of-range index.
Rational minor(const Matrix& m, std::span<const std::size_t> rows,
               std::span<const std::size_t> cols);

/// Determinant of a square list of columns (each of the same length).
Rational det_columns(std::span<const std::span<const Rational>> cols);

/// 2×2 and 3×3 determinants of column triples, the hot path everywhere.
Rational det2(std::span<const Rational> a, std::span<const Rational> b);
Rational det3(std::span<const Rational> a, std::span<const Rational> b,
              std::span<const Rational> c);

/// Rank over Q by fraction-free (Bareiss) elimination on the integer
/// matrix obtained by clearing each row's denominators.
std::size_t rank(const Matrix& m);

/// Δ_i = det[v_i | v_{i+1} | … | v_{i+m-1}], cyclic column indices.
/// Empty when n < m.
SignSeq cyclic_minor_sequence(const Matrix& m);

/// Number of strict sign changes after deleting zeros.
int var(std::span<const Rational> v);

/// Cyclic sign variation: var(v_k, …, v_n, v_k) for the first nonzero v_k,
/// and 0 for the zero vector. Always even.
int cvar_vector(std::span<const Rational> v);

int cvar_matrix(const Matrix& m);

struct OddMinorCheck {
    bool ok = true;
    // Violating minor when !ok: 0-based row and column index sets.
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    Rational value;
};

/// For 3-row matrices: every entry and every 3×3 minor is nonnegative.
/// Entries are scanned first (column-major), then column triples in
/// lexicographic order. Throws InputError unless rows() == 3.
OddMinorCheck odd_minors_nonneg(const Matrix& m);

/// Smallest 3×3 minor over all column triples, with the triple.
struct MinorExtreme {
    std::vector<std::size_t> cols;
    Rational value;
};
MinorExtreme min_maximal_minor_3(const Matrix& m);

}  // namespace cylpos

#endif  // CYLPOS_EXACTMAT_HPP
