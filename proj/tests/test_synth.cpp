#include <doctest.h>

#include <cmath>
#include <random>

#include "cylpos/errors.hpp"
#include "cylpos/exactmat.hpp"
#include "cylpos/oracle.hpp"
#include "cylpos/synth.hpp"
#include "naive.hpp"

using namespace cylpos;

namespace {

Rational r(long p, long q = 1) { return Rational(p, q); }

Matrix random_nonneg(std::mt19937_64& rng, std::size_t m, std::size_t n, long hi) {
    Matrix out(m, n);
    for (std::size_t row = 0; row < m; ++row)
        for (std::size_t c = 0; c < n; ++c) out(row, c) = static_cast<long>(rng() % static_cast<std::uint64_t>(hi + 1));
    return out;
}

bool all_triples_positive(const Matrix& m) {
    const auto rows = naive::rows_of(m);
    for (const auto& cols : naive::subsets(m.cols(), 3))
        if (naive::minor(rows, {0, 1, 2}, cols).sign() <= 0) return false;
    return true;
}

bool precedes(const Matrix& m, std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < m.rows(); ++k)
        if (m(k, i).is_zero() && !m(k, j).is_zero()) return false;
    return true;
}

}  // namespace

TEST_CASE("comparable examples") {
    const Matrix a = Matrix::from_rows({{1, 1}, {1, 0}, {0, 0}});
    CHECK(comparable(a, 0, 1) == Comparison::kIPrecJ);
    CHECK(comparable(a, 1, 0) == Comparison::kJPrecI);
    const Matrix b = Matrix::from_rows({{1, 1}, {2, 3}, {1, 5}});
    CHECK(comparable(b, 0, 1) == Comparison::kBoth);
    const Matrix c = Matrix::from_rows({{1, 0}, {0, 1}, {0, 0}});
    CHECK(comparable(c, 0, 1) == Comparison::kNeither);
    const Matrix wide = Matrix::from_rows({{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}});
    CHECK(comparable(wide, 3, 0) == Comparison::kIPrecJ);
    CHECK_THROWS_AS(comparable(wide, 0, 2), InputError);
}

TEST_CASE("remove_dependent_column examples") {
    const Matrix m = Matrix::from_rows({{1, 0, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}});
    const auto rem = remove_dependent_column(m);
    REQUIRE(rem.has_value());
    CHECK(rem->step.i == 2);
    CHECK(rem->step.a == 1);
    CHECK(rem->step.b == 1);
    CHECK(rem->reduced == Matrix::identity(3));

    CHECK_FALSE(remove_dependent_column(Matrix::identity(3)).has_value());

    // The last column repeats the first, so column 1 is its left neighbour.
    const Matrix dup = Matrix::from_rows({{1, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 0}});
    const auto d = remove_dependent_column(dup);
    REQUIRE(d.has_value());
    CHECK(d->step.i == 0);
    CHECK(d->step.a == 1);
    CHECK(d->step.b == 0);

    CHECK_THROWS_AS(remove_dependent_column(Matrix::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}})), InputError);
    CHECK_THROWS_AS(remove_dependent_column(Matrix::identity(2)), InputError);
}

TEST_CASE("max_epsilon_subtract examples") {
    const Matrix m = Matrix::from_rows({{1, 0, 0}, {1, 1, 0}, {0, 1, 1}});
    const Subtraction s = max_epsilon_subtract(m, 1, 2);
    CHECK(s.epsilon == 1);
    CHECK(s.result == Matrix::from_rows({{1, 0, 0}, {1, 1, 0}, {0, 0, 1}}));
    // The dichotomy: no zero minor, so the new column no longer precedes its neighbour.
    CHECK(naive::det(naive::rows_of(s.result)) != 0);
    CHECK_FALSE(precedes(s.result, 1, 2));

    const Matrix scaled = m.with_column_replaced(2, std::vector<Rational>{0, 0, 2});
    CHECK(max_epsilon_subtract(scaled, 1, 2).epsilon == r(1, 2));

    CHECK_THROWS_AS(max_epsilon_subtract(Matrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 0, 1), InputError);
    CHECK_THROWS_AS(max_epsilon_subtract(Matrix::from_rows({{1, 1, 0}, {1, 1, 0}, {0, 1, 1}}), 1, 2), InputError);
}

TEST_CASE("maximal epsilon is the largest admissible value") {
    std::mt19937_64 rng(31);
    std::size_t checked = 0;
    while (checked < 300) {
        const Matrix m = random_nonneg(rng, 3, 3 + rng() % 3, 4);
        if (!all_triples_positive(m)) continue;
        const std::size_t n = m.cols();
        const std::size_t i = rng() % n;
        const std::size_t j = rng() % 2 ? (i + 1) % n : (i + n - 1) % n;
        if (!precedes(m, i, j)) continue;
        const Subtraction s = max_epsilon_subtract(m, i, j);
        CHECK(s.epsilon.sign() > 0);
        auto subtract = [&](const Rational& e) {
            std::vector<Rational> col(3);
            for (std::size_t k = 0; k < 3; ++k) col[k] = m(k, i) - e * m(k, j);
            return m.with_column_replaced(i, col);
        };
        auto admissible = [](const Matrix& x) {
            if (!x.is_nonnegative()) return false;
            const auto rows = naive::rows_of(x);
            for (const auto& cols : naive::subsets(x.cols(), 3))
                if (naive::minor(rows, {0, 1, 2}, cols).sign() < 0) return false;
            return true;
        };
        CHECK(s.result == subtract(s.epsilon));
        CHECK(admissible(s.result));
        CHECK_FALSE(admissible(subtract(s.epsilon + r(1, 1000000))));
        // Dichotomy.
        bool zero_minor = false;
        const auto rows = naive::rows_of(s.result);
        for (const auto& cols : naive::subsets(n, 3)) zero_minor |= naive::minor(rows, {0, 1, 2}, cols).is_zero();
        CHECK((zero_minor || !precedes(s.result, i, j)));
        ++checked;
    }
}

TEST_CASE("synthesize_rank2 examples") {
    const Verdict id = synthesize_rank2(Matrix::identity(2));
    REQUIRE(id.accepted());
    CHECK(id.certificate->ops.empty());

    const Matrix m = Matrix::from_rows({{1, 0, 1}, {0, 1, 1}});
    const Verdict v = synthesize_rank2(m);
    REQUIRE(v.accepted());
    CHECK(verify_certificate(*v.certificate, m));

    const Matrix alt = Matrix::from_rows({{1, 0, 1, 0}, {0, 1, 0, 1}});
    const Verdict rej = synthesize_rank2(alt);
    REQUIRE_FALSE(rej.accepted());
    CHECK(rej.witness->kind == WitnessKind::kCvarTooLarge);
    CHECK(rej.witness->value == 4);
    CHECK(rej.witness->str() == "cvar=4");
    CHECK(witness_holds(*rej.witness, alt));

    CHECK_THROWS_AS(synthesize_rank2(Matrix::identity(3)), InputError);
}

TEST_CASE("synthesize_rank2 handles zero columns") {
    const Matrix gap = Matrix::from_rows({{1, 0, 0}, {0, 0, 1}});
    const Verdict v = synthesize_rank2(gap);
    REQUIRE(v.accepted());
    CHECK(verify_certificate(*v.certificate, gap));

    // cvar 2 with the zero column kept, 4 once it is deleted.
    const Matrix hidden = Matrix::from_rows({{1, 0, 0, 1, 0}, {0, 0, 1, 0, 1}});
    CHECK(cvar_matrix(hidden) == 2);
    const Verdict h = synthesize_rank2(hidden);
    REQUIRE_FALSE(h.accepted());
    CHECK(h.witness->str() == "cvar=4 zero-columns-deleted");
    CHECK(witness_holds(*h.witness, hidden));
}

TEST_CASE("synthesize_rank3 examples") {
    const Verdict id = synthesize_rank3(Matrix::identity(3));
    REQUIRE(id.accepted());
    CHECK(id.certificate->ops.empty());

    const Matrix ring = Matrix::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    const Verdict v = synthesize_rank3(ring);
    REQUIRE(v.accepted());
    CHECK(verify_certificate(*v.certificate, ring));

    const Matrix odd = Matrix::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
    const Verdict rej = synthesize_rank3(odd);
    REQUIRE_FALSE(rej.accepted());
    CHECK(rej.witness->kind == WitnessKind::kNegativeOddMinor);
    CHECK(rej.witness->cols == std::vector<std::size_t>{0, 1, 2});
    CHECK(rej.witness->value == -1);
    CHECK(rej.witness->str() == "negative-odd-minor cols=1,2,3 value=-1");

    const Verdict neg = synthesize_rank3(Matrix::from_rows({{1, 0, 0}, {0, 1, -1}, {0, 0, 1}}));
    REQUIRE_FALSE(neg.accepted());
    CHECK(neg.witness->str() == "negative-entry row=2 col=3 value=-1");

    CHECK_THROWS_AS(synthesize_rank3(Matrix::identity(2)), InputError);
}

TEST_CASE("base_case_3x3 examples") {
    const Matrix diag = Matrix::from_rows({{2, 0, 0}, {0, 3, 0}, {0, 0, 5}});
    const Certificate d = base_case_3x3(diag);
    CHECK(d.ops == std::vector<ColumnOp>{Rescale{0, 2}, Rescale{1, 3}, Rescale{2, 5}});

    const Matrix ring = Matrix::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    const Certificate c = base_case_3x3(ring);
    CHECK(verify_certificate(c, ring));
    std::size_t rescales = 0;
    for (const auto& op : c.ops)
        if (std::holds_alternative<Rescale>(op)) ++rescales;
    CHECK(rescales == 0);

    const Matrix turned = Matrix::from_rows({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
    const Certificate t = base_case_3x3(turned);
    CHECK(verify_certificate(t, turned));
    // One backward rotation, which is two forward shifts.
    CHECK(t.ops.size() == c.ops.size() + 2);

    const Matrix perm = Matrix::from_rows({{0, 0, 7}, {2, 0, 0}, {0, 1, 0}});
    CHECK(verify_certificate(base_case_3x3(perm), perm));
}

TEST_CASE("decide examples") {
    CHECK(decide(Matrix::identity(2)).accepted());
    const Verdict b = decide(Matrix::from_rows({{1, 2, 1}, {1, 2, 1}, {0, 1, 1}}));
    REQUIRE_FALSE(b.accepted());
    CHECK(b.witness->str() == "rank-defect rank=2");
    const Matrix four = Matrix::from_rows({{1, 0, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}});
    const Verdict v = decide(four);
    REQUIRE(v.accepted());
    CHECK(verify_certificate(*v.certificate, four));
    const Verdict narrow = decide(Matrix::from_rows({{1, 0}, {0, 1}, {1, 1}}));
    REQUIRE_FALSE(narrow.accepted());
    CHECK(narrow.witness->kind == WitnessKind::kWrongShape);
    try {
        (void)decide(Matrix::identity(4));
        FAIL("expected an error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("unsupported rank class") != std::string::npos);
    }
}

TEST_CASE("removal coefficients reproduce the removed column") {
    std::mt19937_64 rng(32);
    std::size_t removals = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        const std::size_t m = 2 + rng() % 2;
        const Matrix a = random_nonneg(rng, m, m + rng() % 4, 3);
        ReductionLog log;
        const Verdict v = decide(a, &log);
        if (!v.accepted()) continue;
        Matrix cur = log.original;
        for (const auto& step : log.steps) {
            if (const auto* rc = std::get_if<RemoveColumn>(&step)) {
                ++removals;
                const std::size_t n = cur.cols();
                CHECK(rc->a.sign() >= 0);
                CHECK(rc->b.sign() >= 0);
                for (std::size_t k = 0; k < m; ++k)
                    CHECK(rc->a * cur(k, (rc->i + n - 1) % n) + rc->b * cur(k, (rc->i + 1) % n) == cur(k, rc->i));
            }
            cur = apply_step(step, cur);
        }
        CHECK(cur == log.reduced);
    }
    CHECK(removals > 0);
}

TEST_CASE("zeros in each row are cyclically consecutive once triples are independent") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 2000; ++trial) {
        const Matrix a = random_nonneg(rng, 3, 3 + rng() % 4, 3);
        ReductionLog log;
        if (!decide(a, &log).accepted()) continue;
        Matrix cur = log.original;
        auto check_rows = [](const Matrix& x) {
            if (remove_dependent_column(x)) return;
            for (std::size_t k = 0; k < 3; ++k) {
                int blocks = 0;
                for (std::size_t c = 0; c < x.cols(); ++c)
                    if (x(k, c).is_zero() && !x(k, (c + x.cols() - 1) % x.cols()).is_zero()) ++blocks;
                CHECK(blocks <= 1);
            }
        };
        for (const auto& step : log.steps) {
            if (rank(cur) == 3 && odd_minors_nonneg(cur).ok) check_rows(cur);
            cur = apply_step(step, cur);
        }
    }
}

TEST_CASE("replaying a step undoes it") {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t m = 2 + rng() % 2;
        const Matrix a = random_nonneg(rng, m, m + rng() % 4, 3);
        ReductionLog log;
        if (!decide(a, &log).accepted()) continue;
        Matrix cur = log.original;
        for (const auto& step : log.steps) {
            const Matrix next = apply_step(step, cur);
            Matrix back = next;
            for (const auto& op : replay_step(step, cur.cols())) back = cylpos::apply(op, back);
            CHECK(back == cur);
            cur = next;
        }
    }
}

TEST_CASE("certificates round-trip through decide") {
    std::size_t rank_deficient = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const std::size_t m = 2 + seed % 2;
        const Certificate c = random_certificate(m, seed % 31, 500 + seed);
        const Matrix a = apply_certificate(c);
        if (rank(a) < m) {
            ++rank_deficient;
            continue;
        }
        const Verdict v = decide(a);
        INFO(a.str());
        REQUIRE(v.accepted());
        CHECK(verify_certificate(*v.certificate, a));
    }
    MESSAGE("rank-deficient certificate matrices skipped: " << rank_deficient);
}

TEST_CASE("rejection witnesses hold") {
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 3000; ++trial) {
        const std::size_t m = 2 + rng() % 2;
        Matrix a = random_nonneg(rng, m, 1 + rng() % 5, 2);
        if (rng() % 10 == 0) a(rng() % m, rng() % a.cols()) = -1;
        const Verdict v = decide(a);
        if (v.accepted()) continue;
        CHECK(witness_holds(*v.witness, a));
    }
}

TEST_CASE("argument order agrees with consecutive determinants") {
    // Sanity check against floating-point angles; determinants stay exact.
    std::mt19937_64 rng(36);
    for (int trial = 0; trial < 5000; ++trial) {
        const long a0 = static_cast<long>(rng() % 20), a1 = static_cast<long>(rng() % 20);
        const long b0 = static_cast<long>(rng() % 20), b1 = static_cast<long>(rng() % 20);
        if ((a0 == 0 && a1 == 0) || (b0 == 0 && b1 == 0)) continue;
        const std::vector<Rational> u{a0, a1}, w{b0, b1};
        const double diff = std::atan2(double(b1), double(b0)) - std::atan2(double(a1), double(a0));
        const int angle_sign = std::abs(diff) < 1e-12 ? 0 : (diff > 0 ? 1 : -1);
        CHECK(det2(u, w).sign() == angle_sign);
    }
}
