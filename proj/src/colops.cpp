#include "cylpos/colops.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "cylpos/errors.hpp"

namespace cylpos {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Rational slot_angle(std::size_t slot, std::size_t width) {
    return Rational(static_cast<long>(2 * slot + 1), static_cast<long>(2 * width));
}

}  // namespace

std::string to_string(const ColumnOp& op) {
    return std::visit(overloaded{
                          [](const Join& j) { return "join " + std::to_string(j.i + 1); },
                          [](const Double& d) { return "double " + std::to_string(d.i + 1); },
                          [](const Shift&) { return std::string("shift"); },
                          [](const Rescale& r) { return "rescale " + std::to_string(r.i + 1) + " " + r.a.str(); },
                      },
                      op);
}

Matrix apply(const ColumnOp& op, const Matrix& m) {
    const std::size_t n = m.cols();
    return std::visit(
        overloaded{
            [&](const Join& j) {
                if (n < 2 || j.i + 1 >= n)
                    throw InputError("join " + std::to_string(j.i + 1) + " needs columns i and i+1 (have " +
                                     std::to_string(n) + ")");
                Column sum = m.column_copy(j.i);
                auto next = m.column(j.i + 1);
                for (std::size_t r = 0; r < sum.size(); ++r) sum[r] += next[r];
                return m.with_column_replaced(j.i, sum).without_column(j.i + 1);
            },
            [&](const Double& d) {
                if (d.i >= n)
                    throw InputError("double " + std::to_string(d.i + 1) + " out of range (have " +
                                     std::to_string(n) + " columns)");
                return m.with_column_inserted(d.i + 1, m.column(d.i));
            },
            [&](const Shift&) {
                if (n == 0) throw InputError("shift on a matrix without columns");
                return m.without_column(n - 1).with_column_inserted(0, m.column(n - 1));
            },
            [&](const Rescale& s) {
                if (s.i >= n)
                    throw InputError("rescale " + std::to_string(s.i + 1) + " out of range (have " +
                                     std::to_string(n) + " columns)");
                if (s.a.sign() < 0) throw InputError("rescale factor " + s.a.str() + " is negative");
                Column col = m.column_copy(s.i);
                for (auto& x : col) x *= s.a;
                return m.with_column_replaced(s.i, col);
            },
        },
        op);
}

Matrix apply_certificate(const Certificate& c) {
    if (c.m == 0) throw InputError("certificate needs at least one row");
    Matrix cur = Matrix::identity(c.m);
    for (std::size_t k = 0; k < c.ops.size(); ++k) {
        try {
            cur = cylpos::apply(c.ops[k], cur);
        } catch (const InputError& e) {
            throw InputError("step " + std::to_string(k + 1) + " (" + to_string(c.ops[k]) + "): " + e.what());
        }
    }
    return cur;
}

std::optional<CertificateMismatch> explain_mismatch(const Certificate& c, const Matrix& m) {
    Matrix got;
    try {
        got = apply_certificate(c);
    } catch (const InputError& e) {
        return CertificateMismatch{e.what()};
    }
    if (got.rows() != m.rows() || got.cols() != m.cols()) {
        std::ostringstream os;
        os << "dimension mismatch: certificate gives " << got.rows() << "x" << got.cols() << ", matrix is "
           << m.rows() << "x" << m.cols();
        return CertificateMismatch{os.str()};
    }
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t col = 0; col < m.cols(); ++col)
            if (got(r, col) != m(r, col)) {
                std::ostringstream os;
                os << "entry row=" << r + 1 << " col=" << col + 1 << " certificate=" << got(r, col)
                   << " matrix=" << m(r, col);
                return CertificateMismatch{os.str()};
            }
    return std::nullopt;
}

bool verify_certificate(const Certificate& c, const Matrix& m) { return !explain_mismatch(c, m).has_value(); }

std::optional<std::vector<ColumnOp>> match_local_move(const Matrix& before, const Matrix& after) {
    if (before.rows() != after.rows()) return std::nullopt;
    const std::size_t n = before.cols();

    struct Candidate {
        std::vector<ColumnOp> ops;
        std::vector<std::size_t> scaled;  // result columns that may carry a factor
    };
    std::vector<Candidate> candidates;
    if (after.cols() == n && n > 0) {
        candidates.push_back({{Shift{}}, {}});
        candidates.push_back({std::vector<ColumnOp>(n - 1, Shift{}), {}});
    } else if (after.cols() == n + 1 && n > 0) {
        for (std::size_t i = 0; i < n; ++i) candidates.push_back({{Double{i}}, {i, i + 1}});
        // Copies that end up on both sides of the seam.
        candidates.push_back({{Double{n - 1}, Shift{}}, {0, n}});
        std::vector<ColumnOp> left{Double{0}};
        left.insert(left.end(), n, Shift{});
        candidates.push_back({left, {0, n}});
    } else if (after.cols() + 1 == n && n >= 2) {
        for (std::size_t i = 0; i + 1 < n; ++i) candidates.push_back({{Join{i}}, {i}});
        candidates.push_back({{Shift{}, Join{0}}, {0}});
        std::vector<ColumnOp> back(n - 1, Shift{});
        back.push_back(Join{n - 2});
        candidates.push_back({back, {n - 2}});
    }

    for (const auto& cand : candidates) {
        Matrix r = before;
        for (const auto& op : cand.ops) r = cylpos::apply(op, r);
        bool ok = true;
        std::vector<ColumnOp> ops = cand.ops;
        for (std::size_t c = 0; c < r.cols() && ok; ++c) {
            const bool free = std::find(cand.scaled.begin(), cand.scaled.end(), c) != cand.scaled.end();
            auto have = r.column(c);
            auto want = after.column(c);
            if (!free) {
                ok = std::equal(have.begin(), have.end(), want.begin());
                continue;
            }
            auto pivot = std::find_if(have.begin(), have.end(), [](const Rational& x) { return !x.is_zero(); });
            if (pivot == have.end()) {
                ok = is_zero_vector(want);
                continue;
            }
            const Rational lambda = want[pivot - have.begin()] / *pivot;
            if (lambda.sign() <= 0) {
                ok = false;
                continue;
            }
            for (std::size_t k = 0; k < have.size() && ok; ++k) ok = have[k] * lambda == want[k];
            if (ok && lambda != Rational(1)) ops.push_back(Rescale{c, lambda});
        }
        if (ok) return ops;
    }
    return std::nullopt;
}

CylNetwork to_network(const Certificate& c) {
    if (c.m == 0) throw InputError("certificate needs at least one row");
    // Validates indices and factors up front so that errors name the step.
    (void)apply_certificate(c);

    struct Strand {
        bool alive = true;
        VertexId tail = 0;
        Rational pending = 1;
        long lift = 0;  // turns gained since leaving the tail
        std::vector<Waypoint> via;
    };

    CylNetwork net;
    const std::size_t L = c.ops.size();
    const Rational step(1, static_cast<long>(L + 1));
    auto boundary = [&](std::size_t k) { return step * Rational(static_cast<long>(k)); };

    std::vector<Strand> strands(c.m);
    for (std::size_t k = 0; k < c.m; ++k) {
        net.sources.push_back({k, slot_angle(k, c.m)});
        strands[k].tail = k;
    }
    VertexId next_id = c.m;

    auto close = [&](Strand& s, VertexId head) {
        Edge e;
        e.from = s.tail;
        e.to = head;
        e.weight = s.pending;
        e.wind = s.lift;
        e.via = std::move(s.via);
        net.edges.push_back(std::move(e));
    };
    auto start = [](VertexId at) {
        Strand s;
        s.tail = at;
        return s;
    };
    auto dead = [] {
        Strand s;
        s.alive = false;
        return s;
    };

    for (std::size_t k = 0; k <= L; ++k) {
        // Every live strand passes the middle of the gap before op k at its slot.
        const Rational mid = (boundary(k) + boundary(k + 1)) / Rational(2);
        const std::size_t width = strands.size();
        for (std::size_t s = 0; s < width; ++s) {
            if (strands[s].alive)
                strands[s].via.push_back({mid, slot_angle(s, width) + Rational(strands[s].lift)});
        }
        if (k == L) break;

        const Rational layer = boundary(k + 1);
        std::visit(overloaded{
                       [&](const Join& j) {
                           Strand& a = strands[j.i];
                           Strand& b = strands[j.i + 1];
                           Strand merged;
                           if (a.alive && b.alive) {
                               const VertexId x = next_id++;
                               net.interior.push_back({x, layer, slot_angle(j.i, width - 1)});
                               close(a, x);
                               close(b, x);
                               merged = start(x);
                           } else if (a.alive) {
                               merged = std::move(a);
                           } else if (b.alive) {
                               merged = std::move(b);
                           } else {
                               merged = dead();
                           }
                           strands[j.i] = std::move(merged);
                           strands.erase(strands.begin() + static_cast<long>(j.i) + 1);
                       },
                       [&](const Double& d) {
                           Strand& s = strands[d.i];
                           if (s.alive) {
                               const VertexId x = next_id++;
                               net.interior.push_back({x, layer, slot_angle(d.i, width)});
                               close(s, x);
                               s = start(x);
                               strands.insert(strands.begin() + static_cast<long>(d.i) + 1, start(x));
                           } else {
                               strands.insert(strands.begin() + static_cast<long>(d.i) + 1, dead());
                           }
                       },
                       [&](const Shift&) {
                           Strand last = std::move(strands.back());
                           strands.pop_back();
                           last.lift += 1;
                           strands.insert(strands.begin(), std::move(last));
                       },
                       [&](const Rescale& r) {
                           Strand& s = strands[r.i];
                           if (!s.alive) return;
                           if (r.a.is_zero()) {
                               s = dead();
                           } else {
                               s.pending *= r.a;
                           }
                       },
                   },
                   c.ops[k]);
    }

    const std::size_t width = strands.size();
    for (std::size_t s = 0; s < width; ++s) {
        if (!strands[s].alive)
            throw InputError("column " + std::to_string(s + 1) +
                             " of the certificate's matrix is zero; a network sink needs an incoming edge");
        const VertexId sink = next_id++;
        net.sinks.push_back({sink, slot_angle(s, width)});
        close(strands[s], sink);
    }

    // Remove what only dead strands fed: interior vertices without out-edges.
    for (bool changed = true; changed;) {
        changed = false;
        std::unordered_map<VertexId, std::size_t> out_degree;
        for (const auto& e : net.edges) ++out_degree[e.from];
        std::vector<VertexId> doomed;
        for (const auto& v : net.interior)
            if (!out_degree.count(v.id)) doomed.push_back(v.id);
        if (doomed.empty()) break;
        changed = true;
        auto is_doomed = [&](VertexId id) { return std::find(doomed.begin(), doomed.end(), id) != doomed.end(); };
        std::erase_if(net.interior, [&](const InteriorVertex& v) { return is_doomed(v.id); });
        std::erase_if(net.edges, [&](const Edge& e) { return is_doomed(e.to); });
    }
    for (const auto& s : net.sources) {
        const bool used = std::any_of(net.edges.begin(), net.edges.end(), [&](const Edge& e) { return e.from == s.id; });
        if (!used)
            throw InputError("row " + std::to_string(s.id + 1) +
                             " of the certificate's matrix is zero; a network source needs an outgoing edge");
    }
    return net;
}

}  // namespace cylpos
