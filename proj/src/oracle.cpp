#include "cylpos/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "cylpos/errors.hpp"

namespace cylpos {

namespace {

using Grid = std::vector<std::vector<Rational>>;

// Laplace expansion along the first row.
Rational laplace(const Grid& a) {
    const std::size_t k = a.size();
    if (k == 1) return a[0][0];
    Rational sum(0);
    for (std::size_t c = 0; c < k; ++c) {
        if (a[0][c].is_zero()) continue;
        Grid sub(k - 1);
        for (std::size_t r = 1; r < k; ++r)
            for (std::size_t cc = 0; cc < k; ++cc)
                if (cc != c) sub[r - 1].push_back(a[r][cc]);
        const Rational term = a[0][c] * laplace(sub);
        if (c % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    return sum;
}

Rational naive_minor(const Matrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    Grid g(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (auto c : cols) g[i].push_back(m(rows[i], c));
    return laplace(g);
}

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

std::size_t naive_rank(const Matrix& m) {
    for (std::size_t k = std::min(m.rows(), m.cols()); k > 0; --k) {
        for (const auto& rows : subsets(m.rows(), k))
            for (const auto& cols : subsets(m.cols(), k))
                if (!naive_minor(m, rows, cols).is_zero()) return k;
    }
    return 0;
}

int definitional_cvar(const std::vector<Rational>& v) {
    std::size_t k = 0;
    while (k < v.size() && v[k].is_zero()) ++k;
    if (k == v.size()) return 0;
    std::vector<int> signs;
    for (std::size_t i = k; i < v.size(); ++i)
        if (!v[i].is_zero()) signs.push_back(v[i].sign());
    signs.push_back(v[k].sign());
    int changes = 0;
    for (std::size_t i = 1; i < signs.size(); ++i)
        if (signs[i] != signs[i - 1]) ++changes;
    return changes;
}

bool has_zero_column(const Matrix& m) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
        bool zero = true;
        for (std::size_t r = 0; r < m.rows(); ++r) zero = zero && m(r, c).is_zero();
        if (zero) return true;
    }
    return false;
}

bool entries_nonnegative(const Matrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m(r, c).sign() < 0) return false;
    return true;
}

// Δ sequence of 2-row matrices from naive 2×2 determinants.
std::vector<Rational> naive_deltas_2(const Matrix& m, const std::vector<std::size_t>& cols) {
    std::vector<Rational> d;
    const std::size_t n = cols.size();
    for (std::size_t i = 0; i < n; ++i) d.push_back(naive_minor(m, {0, 1}, {cols[i], cols[(i + 1) % n]}));
    return d;
}

bool naive_precedes(const Matrix& m, std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (m(r, i).is_zero() && !m(r, j).is_zero()) return false;
    return true;
}

bool some_minor_zero_3(const Matrix& m) {
    for (const auto& cols : subsets(m.cols(), 3))
        if (naive_minor(m, {0, 1, 2}, cols).is_zero()) return true;
    return false;
}

std::string verdict_text(const Verdict& v) {
    return v.accepted() ? std::string("accept") : "reject(" + v.witness->str() + ")";
}

template <class Gen>
TrialReport run_checks(std::uint64_t count, Gen generate, const CheckOptions& options, std::string label,
                       std::uint64_t seed) {
    auto check_block = [&](std::uint64_t lo, std::uint64_t hi, TrialReport& rep) {
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            std::optional<Matrix> item = generate(idx);
            if (!item) continue;
            const Matrix& m = *item;
            ++rep.total;
            auto discrepancy = [&](std::string expected, std::string got) {
                rep.discrepancies.push_back({idx, m, std::move(expected), std::move(got)});
            };
            const bool expected = independent_condition(m, options.condition, options.mutant);
            const std::string expected_text = expected ? "accept" : "reject";

            if (m.rows() == 2 && entries_nonnegative(m) && naive_rank(m) == 2) {
                std::vector<std::size_t> all(m.cols());
                for (std::size_t c = 0; c < all.size(); ++c) all[c] = c;
                if (definitional_cvar(naive_deltas_2(m, all)) == 0) ++rep.literal_cvar_zero;
            }

            ReductionLog log;
            Verdict v;
            try {
                v = decide(m, &log);
            } catch (const std::exception& e) {
                discrepancy(expected_text, std::string("error: ") + e.what());
                continue;
            }
            if (v.accepted()) {
                ++rep.accepted;
            } else {
                ++rep.rejected;
                ++rep.rejected_by[to_string(v.witness->kind)];
            }
            if (v.accepted() != expected) {
                discrepancy(expected_text, verdict_text(v));
                continue;
            }
            if (!v.accepted()) {
                if (witness_holds(*v.witness, m)) {
                    ++rep.witnesses_checked;
                } else {
                    discrepancy("valid witness", "witness does not hold: " + v.witness->str());
                }
                continue;
            }
            if (auto why = explain_mismatch(*v.certificate, m)) {
                discrepancy("certificate reproduces input", why->reason);
                continue;
            }
            ++rep.certificates_verified;
            audit_reduction(log, rep);
            if (!options.check_networks) continue;
            if (has_zero_column(m)) {
                ++rep.networks_skipped_zero_column;
                continue;
            }
            try {
                const Matrix measured = boundary_measurements(to_network(*v.certificate));
                if (measured == m) {
                    ++rep.networks_checked;
                } else {
                    discrepancy("network measures input", "network measures " + measured.str());
                }
            } catch (const std::exception& e) {
                discrepancy("network measures input", std::string("error: ") + e.what());
            }
        }
    };

    const unsigned jobs = std::max(1u, options.jobs);
    std::vector<TrialReport> parts(jobs);
    if (jobs == 1) {
        check_block(0, count, parts[0]);
    } else {
        std::vector<std::thread> workers;
        for (unsigned b = 0; b < jobs; ++b) {
            const std::uint64_t lo = count / jobs * b + std::min<std::uint64_t>(b, count % jobs);
            const std::uint64_t hi = lo + count / jobs + (b < count % jobs ? 1 : 0);
            workers.emplace_back([&, lo, hi, b] { check_block(lo, hi, parts[b]); });
        }
        for (auto& w : workers) w.join();
    }
    TrialReport report;
    report.label = std::move(label);
    report.seed = seed;
    for (const auto& p : parts) report.merge(p);
    return report;
}

}  // namespace

std::mt19937_64 item_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

std::uint64_t enumeration_size(const EnumSpec& spec) {
    if (spec.alphabet.empty()) throw InputError("enumeration alphabet is empty");
    if (spec.m == 0) throw InputError("enumeration needs at least one row");
    std::uint64_t total = 0;
    const std::uint64_t k = spec.alphabet.size();
    for (std::size_t n = spec.m; n <= spec.n_max; ++n) {
        std::uint64_t block = 1;
        for (std::size_t e = 0; e < spec.m * n; ++e) {
            if (block > std::numeric_limits<std::uint64_t>::max() / k) throw InputError("enumeration too large");
            block *= k;
        }
        if (total > std::numeric_limits<std::uint64_t>::max() - block) throw InputError("enumeration too large");
        total += block;
    }
    return total;
}

Matrix enumerated_matrix(const EnumSpec& spec, std::uint64_t index) {
    const std::uint64_t k = spec.alphabet.size();
    for (std::size_t n = spec.m; n <= spec.n_max; ++n) {
        std::uint64_t block = 1;
        for (std::size_t e = 0; e < spec.m * n; ++e) block *= k;
        if (index >= block) {
            index -= block;
            continue;
        }
        Matrix out(spec.m, n);
        for (std::size_t p = spec.m * n; p-- > 0;) {
            out(p / n, p % n) = spec.alphabet[index % k];
            index /= k;
        }
        return out;
    }
    throw InputError("enumeration index out of range");
}

bool passes_filter(const EnumSpec& spec, const Matrix& m) {
    switch (spec.filter) {
        case EnumFilter::kNone: return true;
        case EnumFilter::kFullRank: return naive_rank(m) == m.rows();
        case EnumFilter::kNoZeroColumn: return !has_zero_column(m);
    }
    return true;
}

void enumerate_matrices(const EnumSpec& spec, const std::function<void(const Matrix&)>& visit) {
    const std::uint64_t total = enumeration_size(spec);
    for (std::uint64_t i = 0; i < total; ++i) {
        Matrix m = enumerated_matrix(spec, i);
        if (passes_filter(spec, m)) visit(m);
    }
}

Matrix sampled_matrix(const SampleSpec& spec, std::uint64_t index) {
    if (spec.n_min > spec.n_max || spec.m == 0) throw InputError("bad sample spec");
    auto rng = item_rng(spec.seed, index);
    const std::size_t n = spec.n_min + rng() % (spec.n_max - spec.n_min + 1);
    Matrix out(spec.m, n);
    for (std::size_t r = 0; r < spec.m; ++r)
        for (std::size_t c = 0; c < n; ++c)
            out(r, c) = static_cast<long>(rng() % static_cast<std::uint64_t>(spec.max_entry + 1));
    return out;
}

Certificate random_certificate(std::size_t m, std::size_t length, std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(length)};
    std::mt19937_64 rng(seq);
    Certificate c{m, {}};
    std::size_t width = m;
    for (std::size_t k = 0; k < length; ++k) {
        std::uint64_t kind = rng() % 4;
        if (kind == 0 && width < 2) kind = 1;
        switch (kind) {
            case 0:
                c.ops.push_back(Join{rng() % (width - 1)});
                --width;
                break;
            case 1:
                c.ops.push_back(Double{rng() % width});
                ++width;
                break;
            case 2: c.ops.push_back(Shift{}); break;
            default: {
                const std::size_t i = rng() % width;
                const long p = 1 + static_cast<long>(rng() % 9);
                const long q = 1 + static_cast<long>(rng() % 9);
                c.ops.push_back(Rescale{i, Rational(p, q)});
            }
        }
    }
    return c;
}

CylNetwork random_network(const NetworkSpec& spec, std::uint64_t seed) {
    if (spec.sources == 0 || spec.sinks == 0) throw InputError("network needs sources and sinks");
    auto rng = item_rng(seed, 0);
    auto weight = [&] {
        const long p = 1 + static_cast<long>(rng() % 9);
        const long q = 1 + static_cast<long>(rng() % 9);
        return Rational(p, q);
    };
    CylNetwork n;
    // Vertices in layer order: sources, interior, sinks.
    std::vector<VertexId> order;
    for (std::size_t i = 0; i < spec.sources; ++i) {
        n.sources.push_back({i, std::nullopt});
        order.push_back(i);
    }
    for (std::size_t i = 0; i < spec.interior; ++i) {
        const VertexId id = spec.sources + i;
        n.interior.push_back(
            {id, Rational(static_cast<long>(i + 1), static_cast<long>(spec.interior + 1)), std::nullopt});
        order.push_back(id);
    }
    for (std::size_t i = 0; i < spec.sinks; ++i) {
        const VertexId id = spec.sources + spec.interior + i;
        n.sinks.push_back({id, std::nullopt});
        order.push_back(id);
    }
    const std::size_t first_sink = spec.sources + spec.interior;
    auto add = [&](std::size_t from, std::size_t to) { n.edges.push_back({order[from], order[to], weight(), 0, {}}); };
    std::vector<std::size_t> in(order.size(), 0), out(order.size(), 0);
    auto link = [&](std::size_t from, std::size_t to) {
        add(from, to);
        ++out[from];
        ++in[to];
    };
    // Each interior vertex and sink gets an in-edge from something earlier.
    for (std::size_t v = spec.sources; v < order.size(); ++v) {
        const std::size_t limit = std::min(v, first_sink);
        link(rng() % limit, v);
    }
    // Each source and interior vertex gets an out-edge to something later.
    for (std::size_t v = 0; v < first_sink; ++v) {
        if (out[v] > 0) continue;
        const std::size_t lo = std::max(v + 1, spec.sources);
        link(v, lo + rng() % (order.size() - lo));
    }
    for (std::size_t e = 0; e < spec.extra_edges; ++e) {
        const std::size_t from = rng() % first_sink;
        const std::size_t lo = std::max(from + 1, spec.sources);
        link(from, lo + rng() % (order.size() - lo));
    }
    return n;
}

std::uint64_t default_path_bound() {
    if (const char* env = std::getenv("CYLPOS_PATH_BOUND")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return 1'000'000;
}

std::optional<Matrix> brute_force_paths(const CylNetwork& n, std::uint64_t bound) {
    require_valid(n);
    std::unordered_map<VertexId, std::vector<const Edge*>> out;
    for (const auto& e : n.edges) out[e.from].push_back(&e);
    std::unordered_map<VertexId, std::size_t> sink_index;
    for (std::size_t j = 0; j < n.sinks.size(); ++j) sink_index[n.sinks[j].id] = j;

    Matrix result(n.sources.size(), n.sinks.size());
    std::uint64_t paths = 0;
    bool exceeded = false;
    std::function<void(std::size_t, VertexId, const Rational&)> walk = [&](std::size_t row, VertexId v,
                                                                           const Rational& w) {
        if (exceeded) return;
        if (auto s = sink_index.find(v); s != sink_index.end()) {
            if (++paths > bound) {
                exceeded = true;
                return;
            }
            result(row, s->second) += w;
            return;
        }
        auto it = out.find(v);
        if (it == out.end()) return;
        for (const Edge* e : it->second) walk(row, e->to, w * e->weight);
    };
    for (std::size_t i = 0; i < n.sources.size(); ++i) walk(i, n.sources[i].id, Rational(1));
    if (exceeded) return std::nullopt;
    return result;
}

bool independent_condition(const Matrix& m, Condition condition, bool mutant) {
    if (!entries_nonnegative(m)) return false;
    if (m.rows() == 2) {
        if (naive_rank(m) != 2) return false;
        std::vector<std::size_t> cols;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const bool zero = m(0, c).is_zero() && m(1, c).is_zero();
            if (!zero || condition == Condition::kLiteral) cols.push_back(c);
        }
        auto deltas = naive_deltas_2(m, cols);
        if (mutant && !deltas.empty()) deltas[0] = -deltas[0];
        return definitional_cvar(deltas) == 2;
    }
    if (m.rows() == 3) {
        bool first = true;
        for (const auto& cols : subsets(m.cols(), 3)) {
            const Rational d = naive_minor(m, {0, 1, 2}, cols);
            const bool bad = (mutant && first) ? d.sign() > 0 : d.sign() < 0;
            if (bad) return false;
            first = false;
        }
        return naive_rank(m) == 3;
    }
    throw InputError("independent condition covers 2 or 3 rows");
}

void audit_reduction(const ReductionLog& log, TrialReport& report) {
    Matrix cur = log.original;
    std::optional<std::pair<std::size_t, long>> last;
    for (const auto& step : log.steps) {
        if (const auto* s = std::get_if<SubtractNeighbor>(&step)) {
            ++report.subtractions;
            const std::pair<std::size_t, long> pot{cur.cols(), -static_cast<long>(cur.count_zero_entries())};
            if (last && !(pot < *last)) ++report.potential_violations;
            last = pot;
            cur = apply_step(step, cur);
            if (!(some_minor_zero_3(cur) || !naive_precedes(cur, s->i, s->j))) ++report.dichotomy_violations;
            continue;
        }
        if (std::holds_alternative<RemoveColumn>(step)) ++report.removals;
        try {
            cur = apply_step(step, cur);
        } catch (const InputError&) {
            ++report.removal_violations;
            return;
        }
    }
}

void TrialReport::merge(const TrialReport& o) {
    total += o.total;
    accepted += o.accepted;
    rejected += o.rejected;
    for (const auto& [k, v] : o.rejected_by) rejected_by[k] += v;
    certificates_verified += o.certificates_verified;
    networks_checked += o.networks_checked;
    networks_skipped_zero_column += o.networks_skipped_zero_column;
    witnesses_checked += o.witnesses_checked;
    literal_cvar_zero += o.literal_cvar_zero;
    removals += o.removals;
    removal_violations += o.removal_violations;
    subtractions += o.subtractions;
    dichotomy_violations += o.dichotomy_violations;
    potential_violations += o.potential_violations;
    discrepancies.insert(discrepancies.end(), o.discrepancies.begin(), o.discrepancies.end());
}

std::string inline_matrix(const Matrix& m) {
    std::ostringstream os;
    os << m.rows() << ' ' << m.cols();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        os << ';';
        for (std::size_t c = 0; c < m.cols(); ++c) os << ' ' << m(r, c);
    }
    return os.str();
}

std::string TrialReport::str() const {
    std::ostringstream os;
    os << "report " << label << '\n';
    os << "seed " << seed << '\n';
    os << "items " << total << '\n';
    os << "accept " << accepted << '\n';
    os << "reject " << rejected << '\n';
    for (const auto& [k, v] : rejected_by) os << "reject " << k << ' ' << v << '\n';
    os << "witnesses-checked " << witnesses_checked << '\n';
    os << "certificates-verified " << certificates_verified << '\n';
    os << "networks-checked " << networks_checked << '\n';
    os << "networks-skipped-zero-column " << networks_skipped_zero_column << '\n';
    os << "literal-cvar-zero " << literal_cvar_zero << '\n';
    os << "removals " << removals << '\n';
    os << "removal-violations " << removal_violations << '\n';
    os << "subtractions " << subtractions << '\n';
    os << "dichotomy-violations " << dichotomy_violations << '\n';
    os << "potential-violations " << potential_violations << '\n';
    os << "discrepancies " << discrepancies.size() << '\n';
    for (const auto& d : discrepancies)
        os << "discrepancy index=" << d.index << " expected=" << d.expected << " got=" << d.got
           << " matrix=" << inline_matrix(d.input) << '\n';
    return os.str();
}

TrialReport cross_check_theorem(const EnumSpec& spec, const CheckOptions& options) {
    if (spec.m != 2 && spec.m != 3) throw InputError("cross-check covers 2 or 3 rows");
    const std::uint64_t count = enumeration_size(spec);
    std::ostringstream label;
    label << "enumerate m=" << spec.m << " n<=" << spec.n_max << " alphabet=";
    for (std::size_t i = 0; i < spec.alphabet.size(); ++i) label << (i ? "," : "") << spec.alphabet[i];
    label << (options.condition == Condition::kLiteral ? " condition=literal" : " condition=constructible");
    if (options.mutant) label << " mutant";
    return run_checks(
        count,
        [&](std::uint64_t i) -> std::optional<Matrix> {
            Matrix m = enumerated_matrix(spec, i);
            if (!passes_filter(spec, m)) return std::nullopt;
            return m;
        },
        options, label.str(), 0);
}

TrialReport cross_check_sampled(const SampleSpec& spec, const CheckOptions& options) {
    if (spec.m != 2 && spec.m != 3) throw InputError("cross-check covers 2 or 3 rows");
    std::ostringstream label;
    label << "sample m=" << spec.m << " n=" << spec.n_min << ".." << spec.n_max << " entries=0.." << spec.max_entry
          << " count=" << spec.count;
    label << (options.condition == Condition::kLiteral ? " condition=literal" : " condition=constructible");
    if (options.mutant) label << " mutant";
    return run_checks(
        spec.count, [&](std::uint64_t i) -> std::optional<Matrix> { return sampled_matrix(spec, i); }, options,
        label.str(), spec.seed);
}

}  // namespace cylpos
