// Reference implementations used only by the tests. Everything here works
// on plain row vectors and is written for clarity, not speed.
#ifndef CYLPOS_TESTS_NAIVE_HPP
#define CYLPOS_TESTS_NAIVE_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include <doctest.h>

#include "cylpos/matrix.hpp"
#include "cylpos/network.hpp"

namespace naive {

using cylpos::Rational;
using Rows = std::vector<std::vector<Rational>>;

inline Rows rows_of(const cylpos::Matrix& m) {
    Rows out(m.rows(), std::vector<Rational>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
    return out;
}

inline int permutation_sign(const std::vector<std::size_t>& p) {
    int s = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

// Leibniz formula over all permutations.
inline Rational det(const Rows& a) {
    const std::size_t k = a.size();
    std::vector<std::size_t> p(k);
    std::iota(p.begin(), p.end(), 0);
    Rational total = 0;
    do {
        Rational term = permutation_sign(p);
        for (std::size_t r = 0; r < k; ++r) term *= a[r][p[r]];
        total += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

inline Rational minor(const Rows& a, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    Rows sub(rows.size(), std::vector<Rational>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) sub[i][j] = a[rows[i]][cols[j]];
    return det(sub);
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(std::min(k, n)), true);
    if (k > n) return out;
    do {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if (pick[i]) s.push_back(i);
        out.push_back(s);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

// Largest k with a nonzero k×k minor.
inline std::size_t rank(const Rows& a) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    for (std::size_t k = std::min(m, n); k > 0; --k)
        for (const auto& rs : subsets(m, k))
            for (const auto& cs : subsets(n, k))
                if (!minor(a, rs, cs).is_zero()) return k;
    return 0;
}

// Δ_i = det of m cyclically consecutive columns.
inline std::vector<Rational> deltas(const Rows& a) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    std::vector<Rational> out;
    if (n < m) return out;
    std::vector<std::size_t> rows(m);
    std::iota(rows.begin(), rows.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> cols;
        for (std::size_t k = 0; k < m; ++k) cols.push_back((i + k) % n);
        out.push_back(minor(a, rows, cols));
    }
    return out;
}

inline int sign_changes(const std::vector<Rational>& v) {
    int changes = 0;
    int prev = 0;
    for (const auto& x : v) {
        if (x.is_zero()) continue;
        if (prev != 0 && x.sign() != prev) ++changes;
        prev = x.sign();
    }
    return changes;
}

// Number of indices i (cyclically) where the signs of the nonzero entries
// differ from the next nonzero entry.
inline int cyclic_sign_changes(const std::vector<Rational>& v) {
    std::vector<int> s;
    for (const auto& x : v)
        if (!x.is_zero()) s.push_back(x.sign());
    int changes = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] != s[(i + 1) % s.size()]) ++changes;
    return changes;
}

// Column operations on row vectors, 0-based like the library API.
inline Rows join(Rows a, std::size_t i) {
    for (auto& row : a) {
        row[i] += row[i + 1];
        row.erase(row.begin() + static_cast<long>(i) + 1);
    }
    return a;
}
inline Rows dup(Rows a, std::size_t i) {
    for (auto& row : a) row.insert(row.begin() + static_cast<long>(i) + 1, row[i]);
    return a;
}
inline Rows shift(Rows a) {
    for (auto& row : a) std::rotate(row.rbegin(), row.rbegin() + 1, row.rend());
    return a;
}
inline Rows rescale(Rows a, std::size_t i, const Rational& f) {
    for (auto& row : a) row[i] *= f;
    return a;
}
inline Rows identity(std::size_t m) {
    Rows a(m, std::vector<Rational>(m, 0));
    for (std::size_t i = 0; i < m; ++i) a[i][i] = 1;
    return a;
}

// Explicit depth-first walk over every source-to-sink path.
inline Rows path_sums(const cylpos::CylNetwork& n) {
    std::map<cylpos::VertexId, std::vector<const cylpos::Edge*>> out;
    for (const auto& e : n.edges) out[e.from].push_back(&e);
    std::map<cylpos::VertexId, std::size_t> sink_index;
    for (std::size_t k = 0; k < n.sinks.size(); ++k) sink_index[n.sinks[k].id] = k;
    Rows result(n.sources.size(), std::vector<Rational>(n.sinks.size(), 0));
    for (std::size_t s = 0; s < n.sources.size(); ++s) {
        std::vector<std::pair<cylpos::VertexId, Rational>> stack{{n.sources[s].id, Rational(1)}};
        while (!stack.empty()) {
            auto [v, w] = stack.back();
            stack.pop_back();
            if (auto it = sink_index.find(v); it != sink_index.end()) result[s][it->second] += w;
            for (const auto* e : out[v]) stack.push_back({e->to, w * e->weight});
        }
    }
    return result;
}

inline cylpos::Matrix to_matrix(const Rows& a) { return cylpos::Matrix::from_rows(a); }

}  // namespace naive

namespace doctest {
template <>
struct StringMaker<cylpos::Matrix> {
    static String convert(const cylpos::Matrix& m) { return m.str().c_str(); }
};
}  // namespace doctest

#endif  // CYLPOS_TESTS_NAIVE_HPP
