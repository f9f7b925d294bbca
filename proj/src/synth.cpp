#include "cylpos/synth.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <tuple>

#include "cylpos/errors.hpp"
#include "cylpos/exactmat.hpp"

namespace cylpos {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string join_indices(const std::vector<std::size_t>& idx) {
    std::string s;
    for (std::size_t k = 0; k < idx.size(); ++k) s += (k ? "," : "") + std::to_string(idx[k] + 1);
    return s;
}

bool zero_set_contains(std::span<const Rational> big, std::span<const Rational> small) {
    // Every zero coordinate of `small` is zero in `big`.
    for (std::size_t k = 0; k < small.size(); ++k)
        if (small[k].is_zero() && !big[k].is_zero()) return false;
    return true;
}

bool precedes(const Matrix& m, std::size_t i, std::size_t j) {
    return zero_set_contains(m.column(j), m.column(i));
}

Matrix delete_zero_columns(const Matrix& m) {
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!m.is_column_zero(c)) keep.push_back(c);
    return m.select_columns(keep);
}

std::vector<Rational> all_minors_3(const Matrix& m) {
    std::vector<Rational> out;
    const std::size_t n = m.cols();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c) out.push_back(det3(m.column(a), m.column(b), m.column(c)));
    return out;
}

bool all_minors_positive(const Matrix& m) {
    auto minors = all_minors_3(m);
    return std::all_of(minors.begin(), minors.end(), [](const Rational& d) { return d.sign() > 0; });
}

std::size_t zero_minor_count(const Matrix& m) {
    auto minors = all_minors_3(m);
    return static_cast<std::size_t>(
        std::count_if(minors.begin(), minors.end(), [](const Rational& d) { return d.is_zero(); }));
}

bool zeros_cyclically_consecutive(const Matrix& m) {
    const std::size_t n = m.cols();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::size_t runs = 0;
        for (std::size_t c = 0; c < n; ++c)
            if (m(r, c).is_zero() && !m(r, (c + n - 1) % n).is_zero()) ++runs;
        if (runs > 1) return false;
    }
    return true;
}

std::optional<Removal> find_cone_column(const Matrix& m) {
    const std::size_t n = m.cols();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t l = (i + n - 1) % n;
        const std::size_t r = (i + 1) % n;
        if (auto ab = cone_coefficients(m.column(l), m.column(i), m.column(r))) {
            return Removal{m.without_column(i), RemoveColumn{i, ab->first, ab->second}};
        }
    }
    return std::nullopt;
}

std::optional<Removal> remove_dependent_unchecked(const Matrix& m) {
    if (m.cols() <= 3) return std::nullopt;
    if (auto found = find_cone_column(m)) return found;
    const auto deltas = cyclic_minor_sequence(m);
    for (std::size_t i = 0; i < deltas.size(); ++i)
        if (deltas[i].is_zero())
            throw InternalError("consecutive columns " + std::to_string(i + 1) +
                                "..+2 are dependent but no column lies in its neighbours' cone: " + m.str());
    return std::nullopt;
}

Subtraction subtract_unchecked(const Matrix& m, std::size_t i, std::size_t j) {
    auto vi = m.column(i);
    auto vj = m.column(j);
    std::optional<Rational> eps;
    auto consider = [&](Rational bound) {
        if (!eps || bound < *eps) eps = std::move(bound);
    };
    for (std::size_t k = 0; k < vi.size(); ++k)
        if (vj[k].sign() > 0) consider(vi[k] / vj[k]);
    const std::size_t n = m.cols();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c) {
                std::array<std::size_t, 3> t{a, b, c};
                if (std::find(t.begin(), t.end(), i) == t.end() || std::find(t.begin(), t.end(), j) != t.end())
                    continue;
                std::array<std::span<const Rational>, 3> cols{m.column(a), m.column(b), m.column(c)};
                const Rational di = det3(cols[0], cols[1], cols[2]);
                for (auto& col : cols)
                    if (col.data() == vi.data()) col = vj;
                const Rational dij = det3(cols[0], cols[1], cols[2]);
                if (dij.sign() > 0) consider(di / dij);
            }
    if (!eps) throw InternalError("column " + std::to_string(j + 1) + " is zero; nothing bounds the subtraction");
    Column out = m.column_copy(i);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] -= *eps * vj[k];
    return Subtraction{m.with_column_replaced(i, out), *eps};
}

std::vector<ColumnOp> insert_between(std::size_t p, const Rational& a, const Rational& b) {
    std::vector<ColumnOp> ops;
    auto rescale = [&](std::size_t i, const Rational& f) {
        if (f != Rational(1)) ops.push_back(Rescale{i, f});
    };
    if (a.is_zero() && b.is_zero()) {
        ops.push_back(Double{p});
        ops.push_back(Rescale{p + 1, Rational(0)});
    } else if (a.is_zero()) {
        ops.push_back(Double{p + 1});
        rescale(p + 1, b);
    } else if (b.is_zero()) {
        ops.push_back(Double{p});
        rescale(p + 1, a);
    } else {
        ops.push_back(Double{p});
        rescale(p + 1, a);
        ops.push_back(Double{p + 2});
        rescale(p + 2, b);
        ops.push_back(Join{p + 1});
    }
    return ops;
}

void append_shifts(std::vector<ColumnOp>& ops, std::size_t count) { ops.insert(ops.end(), count, Shift{}); }

Witness make_witness(WitnessKind kind, Rational value) {
    Witness w;
    w.kind = kind;
    w.value = std::move(value);
    return w;
}

Verdict reject(Witness w) {
    Verdict v;
    v.witness = std::move(w);
    return v;
}

// Shared prefix of both synthesizers: shape, rank, then entry signs.
std::optional<Witness> screen(const Matrix& m) {
    if (m.cols() < m.rows()) return make_witness(WitnessKind::kWrongShape, Rational(static_cast<long>(m.cols())));
    const std::size_t r = rank(m);
    if (r < m.rows()) return make_witness(WitnessKind::kRankDefect, Rational(static_cast<long>(r)));
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (std::size_t row = 0; row < m.rows(); ++row)
            if (m(row, c).sign() < 0) {
                Witness w = make_witness(WitnessKind::kNegativeEntry, m(row, c));
                w.rows = {row};
                w.cols = {c};
                return w;
            }
    return std::nullopt;
}

Certificate assemble(std::size_t rows, Certificate base, const ReductionLog& log) {
    std::vector<std::size_t> widths;
    std::size_t n = log.original.cols();
    for (const auto& step : log.steps) {
        widths.push_back(n);
        if (!std::holds_alternative<SubtractNeighbor>(step)) --n;
    }
    Certificate cert{rows, std::move(base.ops)};
    for (std::size_t k = log.steps.size(); k-- > 0;) {
        auto ops = replay_step(log.steps[k], widths[k]);
        cert.ops.insert(cert.ops.end(), ops.begin(), ops.end());
    }
    return cert;
}

}  // namespace

std::string to_string(WitnessKind kind) {
    switch (kind) {
        case WitnessKind::kNegativeEntry: return "negative-entry";
        case WitnessKind::kNegativeOddMinor: return "negative-odd-minor";
        case WitnessKind::kCvarTooLarge: return "cvar-too-large";
        case WitnessKind::kRankDefect: return "rank-defect";
        case WitnessKind::kWrongShape: return "wrong-shape";
    }
    return "?";
}

std::string Witness::str() const {
    std::ostringstream os;
    switch (kind) {
        case WitnessKind::kNegativeEntry:
            os << "negative-entry row=" << rows.at(0) + 1 << " col=" << cols.at(0) + 1 << " value=" << value;
            break;
        case WitnessKind::kNegativeOddMinor:
            os << "negative-odd-minor cols=" << join_indices(cols) << " value=" << value;
            break;
        case WitnessKind::kCvarTooLarge:
            os << "cvar=" << value;
            if (zero_columns_deleted) os << " zero-columns-deleted";
            break;
        case WitnessKind::kRankDefect: os << "rank-defect rank=" << value; break;
        case WitnessKind::kWrongShape: os << "wrong-shape cols=" << value; break;
    }
    return os.str();
}

bool witness_holds(const Witness& w, const Matrix& m) {
    switch (w.kind) {
        case WitnessKind::kNegativeEntry:
            return w.rows.size() == 1 && w.cols.size() == 1 && w.rows[0] < m.rows() && w.cols[0] < m.cols() &&
                   m(w.rows[0], w.cols[0]) == w.value && w.value.sign() < 0;
        case WitnessKind::kNegativeOddMinor: {
            if (m.rows() != 3 || w.cols.size() != 3) return false;
            for (auto c : w.cols)
                if (c >= m.cols()) return false;
            const Rational d = det3(m.column(w.cols[0]), m.column(w.cols[1]), m.column(w.cols[2]));
            return d == w.value && d.sign() < 0;
        }
        case WitnessKind::kCvarTooLarge: {
            const Matrix target = w.zero_columns_deleted ? delete_zero_columns(m) : m;
            return Rational(cvar_matrix(target)) == w.value && w.value != Rational(2);
        }
        case WitnessKind::kRankDefect:
            return Rational(static_cast<long>(rank(m))) == w.value && w.value < Rational(static_cast<long>(m.rows()));
        case WitnessKind::kWrongShape: return m.cols() < m.rows();
    }
    return false;
}

Matrix apply_step(const ReductionStep& step, const Matrix& m) {
    const std::size_t n = m.cols();
    return std::visit(
        overloaded{
            [&](const RemoveColumn& s) {
                if (s.i >= n || n < 3) throw InputError("RemoveColumn index out of range");
                if (s.a.sign() < 0 || s.b.sign() < 0) throw InputError("RemoveColumn coefficients must be nonnegative");
                auto l = m.column((s.i + n - 1) % n);
                auto r = m.column((s.i + 1) % n);
                auto v = m.column(s.i);
                for (std::size_t k = 0; k < v.size(); ++k)
                    if (s.a * l[k] + s.b * r[k] != v[k])
                        throw InputError("RemoveColumn coefficients do not reproduce column " +
                                         std::to_string(s.i + 1));
                return m.without_column(s.i);
            },
            [&](const SubtractNeighbor& s) {
                if (s.i >= n || s.j >= n) throw InputError("SubtractNeighbor index out of range");
                if (s.j != (s.i + 1) % n && s.j != (s.i + n - 1) % n)
                    throw InputError("SubtractNeighbor columns are not adjacent");
                if (s.epsilon.sign() <= 0) throw InputError("SubtractNeighbor needs ε > 0");
                Column out = m.column_copy(s.i);
                auto vj = m.column(s.j);
                for (std::size_t k = 0; k < out.size(); ++k) out[k] -= s.epsilon * vj[k];
                return m.with_column_replaced(s.i, out);
            },
            [&](const RemoveZeroColumn& s) {
                if (s.i >= n || n < 2) throw InputError("RemoveZeroColumn index out of range");
                if (!m.is_column_zero(s.i)) throw InputError("column " + std::to_string(s.i + 1) + " is not zero");
                return m.without_column(s.i);
            },
        },
        step);
}

std::vector<ColumnOp> replay_step(const ReductionStep& step, std::size_t n) {
    return std::visit(
        overloaded{
            [&](const RemoveColumn& s) {
                std::vector<ColumnOp> ops;
                if (s.i >= 1 && s.i + 1 < n) return insert_between(s.i - 1, s.a, s.b);
                ops.push_back(Shift{});
                auto mid = insert_between(0, s.a, s.b);
                ops.insert(ops.end(), mid.begin(), mid.end());
                append_shifts(ops, s.i == 0 ? n - 1 : n - 2);
                return ops;
            },
            [&](const SubtractNeighbor& s) {
                std::vector<ColumnOp> ops;
                std::size_t i = s.i;
                std::size_t j = s.j;
                const bool wrap = (i == n - 1 && j == 0) || (i == 0 && j == n - 1);
                if (wrap) {
                    ops.push_back(Shift{});
                    i = (i + 1) % n;
                    j = (j + 1) % n;
                }
                ops.push_back(Double{j});
                ops.push_back(Rescale{j == i + 1 ? j : i, s.epsilon});
                ops.push_back(Join{i});
                if (wrap) append_shifts(ops, n - 1);
                return ops;
            },
            [&](const RemoveZeroColumn& s) {
                std::vector<ColumnOp> ops;
                if (s.i == 0) {
                    ops.push_back(Double{0});
                    ops.push_back(Rescale{0, Rational(0)});
                } else {
                    ops.push_back(Double{s.i - 1});
                    ops.push_back(Rescale{s.i, Rational(0)});
                }
                return ops;
            },
        },
        step);
}

Comparison comparable(const Matrix& m, std::size_t i, std::size_t j) {
    if (m.rows() != 3) throw InputError("the zero-support order is defined here for 3-row matrices");
    const std::size_t n = m.cols();
    if (i >= n || j >= n) throw InputError("column index out of range");
    if (i == j || (j != (i + 1) % n && i != (j + 1) % n))
        throw InputError("columns " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " are not adjacent");
    const bool ij = precedes(m, i, j);
    const bool ji = precedes(m, j, i);
    if (ij && ji) return Comparison::kBoth;
    if (ij) return Comparison::kIPrecJ;
    if (ji) return Comparison::kJPrecI;
    return Comparison::kNeither;
}

std::optional<std::pair<Rational, Rational>> cone_coefficients(std::span<const Rational> l,
                                                               std::span<const Rational> v,
                                                               std::span<const Rational> r) {
    const std::size_t m = v.size();
    auto fits = [&](const Rational& a, const Rational& b) {
        if (a.sign() < 0 || b.sign() < 0) return false;
        for (std::size_t k = 0; k < m; ++k)
            if (a * l[k] + b * r[k] != v[k]) return false;
        return true;
    };
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = p + 1; q < m; ++q) {
            const Rational d = l[p] * r[q] - r[p] * l[q];
            if (d.is_zero()) continue;
            const Rational a = (v[p] * r[q] - r[p] * v[q]) / d;
            const Rational b = (l[p] * v[q] - v[p] * l[q]) / d;
            if (fits(a, b)) return std::make_pair(a, b);
            return std::nullopt;
        }
    // l and r are parallel (or zero): v must be a nonnegative multiple of one of them.
    if (is_zero_vector(v)) return std::make_pair(Rational(0), Rational(0));
    auto multiple_of = [&](std::span<const Rational> u) -> std::optional<Rational> {
        for (std::size_t k = 0; k < m; ++k)
            if (!u[k].is_zero()) return v[k] / u[k];
        return std::nullopt;
    };
    if (auto t = multiple_of(l); t && fits(*t, Rational(0))) return std::make_pair(*t, Rational(0));
    if (auto t = multiple_of(r); t && fits(Rational(0), *t)) return std::make_pair(Rational(0), *t);
    return std::nullopt;
}

std::optional<Removal> remove_dependent_column(const Matrix& m) {
    if (m.rows() != 3) throw InputError("remove_dependent_column needs 3 rows");
    const OddMinorCheck odd = odd_minors_nonneg(m);
    if (!odd.ok) throw InputError("remove_dependent_column needs nonnegative entries and 3×3 minors");
    if (rank(m) != 3) throw InputError("remove_dependent_column needs rank 3");
    return remove_dependent_unchecked(m);
}

Subtraction max_epsilon_subtract(const Matrix& m, std::size_t i, std::size_t j) {
    const Comparison cmp = comparable(m, i, j);
    if (cmp != Comparison::kIPrecJ && cmp != Comparison::kBoth)
        throw InputError("column " + std::to_string(i + 1) + " does not precede column " + std::to_string(j + 1));
    if (m.cols() < 3 || !all_minors_positive(m)) throw InputError("max_epsilon_subtract needs all 3×3 minors positive");
    return subtract_unchecked(m, i, j);
}

Certificate base_case_2x2(const Matrix& m) {
    if (m.rows() != 2 || m.cols() != 2) throw InputError("base_case_2x2 needs a 2×2 matrix");
    if (!m.is_nonnegative()) throw InputError("base_case_2x2 needs nonnegative entries");
    const Rational d = det2(m.column(0), m.column(1));
    if (d.is_zero()) throw InputError("base_case_2x2 needs a nonzero determinant");

    // Cyclic word of scaled basis vectors; target column 0 sums the first
    // group, column 1 the second. Zero terms are dropped.
    struct Term {
        std::size_t basis;
        Rational coef;
        std::size_t target;
    };
    const Rational &p = m(0, 0), &q = m(1, 0), &r = m(0, 1), &s = m(1, 1);
    std::vector<Term> word = d.sign() > 0
                                 ? std::vector<Term>{{0, p, 0}, {1, q, 0}, {1, s, 1}, {0, r, 1}}
                                 : std::vector<Term>{{1, q, 0}, {0, p, 0}, {0, r, 1}, {1, s, 1}};
    std::erase_if(word, [](const Term& t) { return t.coef.is_zero(); });

    // The basis sequence is a rotation of e1^a e2^b.
    std::size_t a = 0;
    for (const auto& t : word) a += t.basis == 0 ? 1 : 0;
    const std::size_t len = word.size();
    const std::size_t b = len - a;

    Certificate cert{2, {}};
    if (a == 2) cert.ops.push_back(Double{0});
    if (b == 2) cert.ops.push_back(Double{a});
    std::optional<std::size_t> rotation;
    for (std::size_t rot = 0; rot < len && !rotation; ++rot) {
        bool ok = true;
        for (std::size_t k = 0; k < len && ok; ++k) {
            const std::size_t src = (k + len - rot) % len;
            ok = word[k].basis == (src < a ? 0u : 1u);
        }
        if (ok) rotation = rot;
    }
    if (!rotation) throw InternalError("2×2 base word is not a rotation of e1^a e2^b: " + m.str());
    append_shifts(cert.ops, *rotation);
    for (std::size_t k = 0; k < len; ++k)
        if (word[k].coef != Rational(1)) cert.ops.push_back(Rescale{k, word[k].coef});
    // Each target column is one contiguous group of one or two terms.
    const auto g0 = static_cast<std::size_t>(
        std::count_if(word.begin(), word.end(), [](const Term& t) { return t.target == 0; }));
    if (g0 == 2) cert.ops.push_back(Join{0});
    if (len - g0 == 2) cert.ops.push_back(Join{1});
    return cert;
}

Certificate base_case_3x3(const Matrix& m) {
    if (m.rows() != 3 || m.cols() != 3) throw InputError("base_case_3x3 needs a 3×3 matrix");
    if (!m.is_nonnegative()) throw InputError("base_case_3x3 needs nonnegative entries");
    if (det3(m.column(0), m.column(1), m.column(2)).sign() <= 0)
        throw InputError("base_case_3x3 needs a positive determinant");
    for (std::size_t i = 0; i < 3; ++i) {
        const Comparison c = comparable(m, i, (i + 1) % 3);
        if (c != Comparison::kNeither)
            throw InputError("base_case_3x3: columns " + std::to_string(i + 1) + " and " +
                             std::to_string((i + 1) % 3 + 1) + " are comparable");
    }

    Certificate cert{3, {}};
    // Shift^s of I_3 has its nonzero entry of column c in row (c - s) mod 3.
    for (std::size_t s = 0; s < 3; ++s) {
        bool pattern = true;
        for (std::size_t c = 0; c < 3 && pattern; ++c)
            for (std::size_t r = 0; r < 3 && pattern; ++r)
                pattern = m(r, c).is_zero() == (r != (c + 3 - s) % 3);
        if (!pattern) continue;
        append_shifts(cert.ops, s);
        for (std::size_t c = 0; c < 3; ++c) {
            const Rational& f = m((c + 3 - s) % 3, c);
            if (f != Rational(1)) cert.ops.push_back(Rescale{c, f});
        }
        return cert;
    }

    // Zeros on a cyclically shifted diagonal: N = columns of M rotated so
    // that N(c,c) = 0, then M = Shift^s(N).
    for (std::size_t s = 0; s < 3; ++s) {
        auto col = [&](std::size_t c) { return m.column((c + s) % 3); };
        if (!(col(0)[0].is_zero() && col(1)[1].is_zero() && col(2)[2].is_zero())) continue;
        // I_3 -> [e1,e1,e2,e2,e3,e3] -> [e2,e3,e3,e1,e1,e2], rescale, join pairs.
        cert.ops = {Double{0}, Double{2}, Double{4}, Shift{}, Shift{}, Shift{}};
        const std::array<Rational, 6> factors{col(0)[1], col(0)[2], col(1)[2], col(1)[0], col(2)[0], col(2)[1]};
        for (std::size_t k = 0; k < 6; ++k)
            if (factors[k] != Rational(1)) cert.ops.push_back(Rescale{k, factors[k]});
        cert.ops.push_back(Join{0});
        cert.ops.push_back(Join{1});
        cert.ops.push_back(Join{2});
        append_shifts(cert.ops, s);
        return cert;
    }
    throw InternalError("3×3 base case has neither a generalized permutation pattern nor cyclic diagonal zeros: " +
                        m.str());
}

Verdict synthesize_rank2(const Matrix& m, ReductionLog* log) {
    if (m.rows() != 2) throw InputError("synthesize_rank2 needs a 2-row matrix");
    if (auto w = screen(m)) return reject(*w);

    ReductionLog local;
    local.original = m;
    Matrix cur = m;
    for (std::size_t c = 0; c < cur.cols();) {
        if (cur.is_column_zero(c)) {
            local.steps.push_back(RemoveZeroColumn{c});
            cur = cur.without_column(c);
        } else {
            ++c;
        }
    }
    const int cv = cvar_matrix(cur);
    if (cv != 2) {
        Witness w = make_witness(WitnessKind::kCvarTooLarge, Rational(cv));
        w.zero_columns_deleted = cur.cols() != m.cols();
        return reject(w);
    }

    while (cur.cols() > 2) {
        const std::size_t n = cur.cols();
        const SignSeq delta = cyclic_minor_sequence(cur);
        std::optional<std::size_t> pick;
        for (std::size_t i = 0; i < n && !pick; ++i) {
            const int before = delta[(i + n - 1) % n].sign();
            const int after = delta[i].sign();
            if ((before >= 0 && after >= 0) || (before <= 0 && after <= 0)) pick = i;
        }
        if (!pick) throw InternalError("no Arg-monotone column in " + cur.str());
        const std::size_t i = *pick;
        auto ab = cone_coefficients(cur.column((i + n - 1) % n), cur.column(i), cur.column((i + 1) % n));
        if (!ab) throw InternalError("Arg-monotone column " + std::to_string(i + 1) + " has no cone coefficients in " +
                                     cur.str());
        local.steps.push_back(RemoveColumn{i, ab->first, ab->second});
        cur = cur.without_column(i);
    }
    local.reduced = cur;

    Verdict v;
    v.certificate = assemble(2, base_case_2x2(cur), local);
    if (log) *log = std::move(local);
    return v;
}

Verdict synthesize_rank3(const Matrix& m, ReductionLog* log) {
    if (m.rows() != 3) throw InputError("synthesize_rank3 needs a 3-row matrix");
    if (auto w = screen(m)) return reject(*w);
    const OddMinorCheck odd = odd_minors_nonneg(m);
    if (!odd.ok) {
        Witness w = make_witness(WitnessKind::kNegativeOddMinor, odd.value);
        w.rows = odd.rows;
        w.cols = odd.cols;
        return reject(w);
    }

    ReductionLog local;
    local.original = m;
    Matrix cur = m;

    // (n, -zero entries, -zero minors) drops at every step; (n, -zero
    // entries) drops between successive subtractions.
    using Fine = std::tuple<std::size_t, long, long>;
    auto fine = [](const Matrix& x) {
        return Fine{x.cols(), -static_cast<long>(x.count_zero_entries()), -static_cast<long>(zero_minor_count(x))};
    };
    Fine last_fine = fine(cur);
    std::optional<std::pair<std::size_t, long>> last_subtraction;
    auto advance = [&](Matrix next) {
        const Fine f = fine(next);
        if (!(f < last_fine)) throw InternalError("reduction potential did not decrease at " + next.str());
        last_fine = f;
        cur = std::move(next);
    };

    for (;;) {
        while (auto removal = remove_dependent_unchecked(cur)) {
            local.steps.push_back(removal->step);
            advance(std::move(removal->reduced));
        }
        if (!zeros_cyclically_consecutive(cur))
            throw InternalError("zeros not cyclically consecutive in " + cur.str());
        if (!all_minors_positive(cur))
            throw InternalError("consecutive triples independent but some 3×3 minor is zero in " + cur.str());

        const std::size_t n = cur.cols();
        std::optional<std::pair<std::size_t, std::size_t>> pair;
        for (std::size_t i = 0; i < n && !pair; ++i) {
            if (precedes(cur, i, (i + 1) % n)) {
                pair = {i, (i + 1) % n};
            } else if (precedes(cur, i, (i + n - 1) % n)) {
                pair = {i, (i + n - 1) % n};
            }
        }
        if (!pair) break;

        const std::pair<std::size_t, long> pot{n, -static_cast<long>(cur.count_zero_entries())};
        if (last_subtraction && !(pot < *last_subtraction))
            throw InternalError("(n, -#zeros) did not decrease between subtractions at " + cur.str());
        last_subtraction = pot;

        auto [i, j] = *pair;
        Subtraction sub = subtract_unchecked(cur, i, j);
        if (zero_minor_count(sub.result) == 0 && precedes(sub.result, i, j))
            throw InternalError("maximal subtraction left column " + std::to_string(i + 1) +
                                " comparable and every minor positive in " + sub.result.str());
        local.steps.push_back(SubtractNeighbor{i, j, sub.epsilon});
        advance(std::move(sub.result));
    }
    if (cur.cols() != 3) throw InternalError("reduction stalled at " + std::to_string(cur.cols()) + " columns");
    local.reduced = cur;

    Verdict v;
    v.certificate = assemble(3, base_case_3x3(cur), local);
    if (log) *log = std::move(local);
    return v;
}

Verdict decide(const Matrix& m, ReductionLog* log) {
    if (m.rows() == 2) return synthesize_rank2(m, log);
    if (m.rows() == 3) return synthesize_rank3(m, log);
    throw InputError("unsupported rank class: " + std::to_string(m.rows()) + " rows");
}

}  // namespace cylpos
