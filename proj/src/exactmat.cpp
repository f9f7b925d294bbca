#include "cylpos/exactmat.hpp"

#include <algorithm>
#include <numeric>

#include "cylpos/errors.hpp"

namespace cylpos {

namespace {

using IntMatrix = std::vector<std::vector<mpz_class>>;

// Rows scaled by the lcm of their denominators; row space is unchanged.
IntMatrix clear_denominators(const std::vector<std::vector<Rational>>& rows,
                             std::vector<mpz_class>* multipliers = nullptr) {
    IntMatrix out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        mpz_class l = 1;
        for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.raw().get_den_mpz_t());
        std::vector<mpz_class> ints;
        ints.reserve(row.size());
        for (const auto& x : row) ints.push_back(x.raw().get_num() * (l / x.raw().get_den()));
        out.push_back(std::move(ints));
        if (multipliers) multipliers->push_back(l);
    }
    return out;
}

// Fraction-free forward elimination. Returns the number of pivots; on
// return, `sign` carries the parity of row swaps and the last pivot is
// the determinant of the leading k×k block when the matrix is square.
std::size_t bareiss(IntMatrix& a, int& sign) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a.front().size() : 0;
    mpz_class prev = 1;
    std::size_t r = 0;
    sign = 1;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && a[p][c] == 0) ++p;
        if (p == m) continue;
        if (p != r) {
            std::swap(a[p], a[r]);
            sign = -sign;
        }
        for (std::size_t i = r + 1; i < m; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) {
                mpz_class t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

}  // namespace

Rational det2(std::span<const Rational> a, std::span<const Rational> b) {
    return Rational(mpq_class(a[0].raw() * b[1].raw() - b[0].raw() * a[1].raw()));
}

Rational det3(std::span<const Rational> a, std::span<const Rational> b,
              std::span<const Rational> c) {
    mpq_class d = a[0].raw() * (b[1].raw() * c[2].raw() - b[2].raw() * c[1].raw());
    d -= b[0].raw() * (a[1].raw() * c[2].raw() - a[2].raw() * c[1].raw());
    d += c[0].raw() * (a[1].raw() * b[2].raw() - a[2].raw() * b[1].raw());
    return Rational(std::move(d));
}

Rational det_columns(std::span<const std::span<const Rational>> cols) {
    const std::size_t k = cols.size();
    for (const auto& c : cols) {
        if (c.size() != k) throw InputError("determinant of a non-square column list");
    }
    if (k == 0) return Rational(1);
    if (k == 1) return cols[0][0];
    if (k == 2) return det2(cols[0], cols[1]);
    if (k == 3) return det3(cols[0], cols[1], cols[2]);

    // General case: Bareiss on the integer matrix with rows scaled by
    // their denominators' lcm; the scale is divided back out at the end.
    std::vector<std::vector<Rational>> rows(k, std::vector<Rational>(k));
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t r = 0; r < k; ++r) rows[c][r] = cols[c][r];
    std::vector<mpz_class> multipliers;
    IntMatrix a = clear_denominators(rows, &multipliers);
    mpz_class scale = 1;
    for (const auto& l : multipliers) scale *= l;
    int sign = 1;
    if (bareiss(a, sign) < k) return Rational(0);
    mpq_class d(mpz_class(a[k - 1][k - 1] * sign), scale);
    d.canonicalize();
    return Rational(std::move(d));
}

Rational minor(const Matrix& m, std::span<const std::size_t> rows,
               std::span<const std::size_t> cols) {
    if (rows.size() != cols.size()) throw InputError("minor: row and column sets differ in size");
    if (rows.empty()) throw InputError("minor: empty index set");
    for (auto r : rows)
        if (r >= m.rows()) throw InputError("minor: row index out of range");
    for (auto c : cols)
        if (c >= m.cols()) throw InputError("minor: column index out of range");

    std::vector<Column> picked(cols.size(), Column(rows.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rows.size(); ++i) picked[j][i] = m(rows[i], cols[j]);
    std::vector<std::span<const Rational>> views(picked.begin(), picked.end());
    return det_columns(views);
}

std::size_t rank(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    std::vector<std::vector<Rational>> rows(m.rows(), std::vector<Rational>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
    IntMatrix a = clear_denominators(rows);
    int sign = 1;
    return bareiss(a, sign);
}

SignSeq cyclic_minor_sequence(const Matrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t n = m.cols();
    SignSeq out;
    if (n < rows || rows == 0) return out;
    out.reserve(n);
    std::vector<std::span<const Rational>> window(rows);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < rows; ++k) window[k] = m.column((i + k) % n);
        out.push_back(det_columns(window));
    }
    return out;
}

int var(std::span<const Rational> v) {
    int changes = 0;
    int last = 0;
    for (const auto& x : v) {
        const int s = x.sign();
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

int cvar_vector(std::span<const Rational> v) {
    auto first = std::find_if(v.begin(), v.end(), [](const Rational& x) { return !x.is_zero(); });
    if (first == v.end()) return 0;
    std::vector<Rational> closed(first, v.end());
    closed.push_back(*first);
    return var(closed);
}

int cvar_matrix(const Matrix& m) { return cvar_vector(cyclic_minor_sequence(m)); }

OddMinorCheck odd_minors_nonneg(const Matrix& m) {
    if (m.rows() != 3) throw InputError("odd-minor check needs exactly 3 rows");
    OddMinorCheck out;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        for (std::size_t r = 0; r < 3; ++r) {
            if (m(r, c).sign() < 0) {
                out.ok = false;
                out.rows = {r};
                out.cols = {c};
                out.value = m(r, c);
                return out;
            }
        }
    }
    const std::size_t n = m.cols();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c) {
                Rational d = det3(m.column(a), m.column(b), m.column(c));
                if (d.sign() < 0) {
                    out.ok = false;
                    out.rows = {0, 1, 2};
                    out.cols = {a, b, c};
                    out.value = std::move(d);
                    return out;
                }
            }
    return out;
}

MinorExtreme min_maximal_minor_3(const Matrix& m) {
    if (m.rows() != 3 || m.cols() < 3) throw InputError("3×3 minors need a 3×n matrix with n ≥ 3");
    MinorExtreme best;
    bool first = true;
    const std::size_t n = m.cols();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c) {
                Rational d = det3(m.column(a), m.column(b), m.column(c));
                if (first || d < best.value) {
                    best.cols = {a, b, c};
                    best.value = std::move(d);
                    first = false;
                }
            }
    return best;
}

}  // namespace cylpos
