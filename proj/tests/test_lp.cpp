#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "wcm/lp.hpp"

using namespace wcm;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Independent oracle: enumerates candidate vertices by choosing, for every
// variable, either an active row or an active bound, solving the resulting
// square system by Gaussian elimination, and keeping the best feasible point.
// Exponential, so only for tiny models.
struct BruteLp {
    bool feasible = false;
    bool unbounded = false;
    double objective = -kInf;
    std::vector<double> x;
};

bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& out) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        double best = 1e-9;
        for (int r = col; r < n; ++r)
            if (std::fabs(a[r][col]) > best) {
                best = std::fabs(a[r][col]);
                piv = r;
            }
        if (piv < 0) return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (int c2 = col; c2 < n; ++c2) a[r][c2] -= f * a[col][c2];
            b[r] -= f * b[col];
        }
    }
    out.resize(n);
    for (int i = 0; i < n; ++i) out[i] = b[i] / a[i][i];
    return true;
}

BruteLp brute_lp(const LpModel& m) {
    const int nv = m.num_vars();
    const int nr = m.num_rows();
    std::vector<std::vector<double>> rows(nr, std::vector<double>(nv, 0.0));
    for (int v = 0; v < nv; ++v)
        for (auto [r, c] : m.cols[v]) rows[r][v] += c;

    // Constraint pool: rows (as equalities when active) and single bounds.
    struct Con {
        std::vector<double> a;
        double b;
    };
    std::vector<Con> pool;
    for (int r = 0; r < nr; ++r) pool.push_back({rows[r], m.rhs[r]});
    for (int v = 0; v < nv; ++v) {
        std::vector<double> unit(nv, 0.0);
        unit[v] = 1.0;
        if (std::isfinite(m.lb[v])) pool.push_back({unit, m.lb[v]});
        if (std::isfinite(m.ub[v])) pool.push_back({unit, m.ub[v]});
    }

    BruteLp out;
    const int total = static_cast<int>(pool.size());
    std::vector<int> idx(nv, 0);
    auto feasible_at = [&](const std::vector<double>& x) {
        return max_infeasibility(m, x) <= 1e-7;
    };
    // Choose nv constraints out of the pool (with repetition impossible since
    // combinations are strictly increasing).
    std::vector<int> comb(nv);
    std::function<void(int, int)> rec = [&](int start, int k) {
        if (k == nv) {
            std::vector<std::vector<double>> a(nv);
            std::vector<double> b(nv);
            for (int i = 0; i < nv; ++i) {
                a[i] = pool[comb[i]].a;
                b[i] = pool[comb[i]].b;
            }
            std::vector<double> x;
            if (!solve_square(a, b, x)) return;
            if (!feasible_at(x)) return;
            out.feasible = true;
            double obj = 0;
            for (int v = 0; v < nv; ++v) obj += m.obj[v] * x[v];
            if (obj > out.objective) {
                out.objective = obj;
                out.x = x;
            }
            return;
        }
        for (int i = start; i < total; ++i) {
            comb[k] = i;
            rec(i + 1, k + 1);
        }
    };
    if (nv > 0 && total >= nv) rec(0, 0);

    // Detect unboundedness: objective improving ray from the best vertex.
    // Crude check: solve with huge artificial box and compare.
    return out;
}

LpModel random_model(std::mt19937_64& rng, int nv, int nr) {
    LpModel m;
    auto u = [&](double lo, double hi) {
        return lo + (hi - lo) * (double(rng() >> 11) * 0x1.0p-53);
    };
    for (int v = 0; v < nv; ++v) {
        double lo = u(-2, 1);
        m.add_var(lo, lo + u(0, 3), u(-2, 2));
    }
    for (int r = 0; r < nr; ++r) {
        std::vector<std::pair<int, double>> terms;
        for (int v = 0; v < nv; ++v)
            if (rng() % 100 < 70) terms.emplace_back(v, std::round(u(-3, 3)));
        RowSense s = rng() % 3 == 0 ? RowSense::ge : RowSense::le;
        if (rng() % 5 == 0) s = RowSense::eq;
        m.add_row(terms, s, std::round(u(-2, 4)));
    }
    return m;
}

}  // namespace

TEST_CASE("trivial box LP") {
    LpModel m;
    m.add_var(0, 1, 1);
    auto s = solve_lp(m);
    CHECK(s.status == LpStatus::optimal);
    CHECK(s.objective == doctest::Approx(1.0));
    CHECK(s.x[0] == doctest::Approx(1.0));
}

TEST_CASE("simple row LP") {
    LpModel m;
    int x1 = m.add_var(0, kInf, 1);
    int x2 = m.add_var(0, kInf, 1);
    m.add_row({{x1, 1.0}, {x2, 1.0}}, RowSense::le, 1.0);
    auto s = solve_lp(m);
    CHECK(s.status == LpStatus::optimal);
    CHECK(s.objective == doctest::Approx(1.0));
}

TEST_CASE("conflicting bounds are infeasible") {
    LpModel m;
    m.add_var(1, 0, 1);
    CHECK(solve_lp(m).status == LpStatus::infeasible);
}

TEST_CASE("infeasible rows") {
    LpModel m;
    int x = m.add_var(0, 1, 0);
    m.add_row({{x, 1.0}}, RowSense::ge, 2.0);
    CHECK(solve_lp(m).status == LpStatus::infeasible);
}

TEST_CASE("unbounded detection") {
    LpModel m;
    m.add_var(0, kInf, 1);
    CHECK(solve_lp(m).status == LpStatus::unbounded);
}

TEST_CASE("add_row tightens and re-solve respects it") {
    LpModel m;
    int x = m.add_var(0, kInf, 1);
    m.add_row({{x, 1.0}}, RowSense::le, 1.0);
    CHECK(solve_lp(m).objective == doctest::Approx(1.0));
    m.add_row({{x, 1.0}}, RowSense::le, 0.0);
    CHECK(solve_lp(m).objective == doctest::Approx(0.0));
}

TEST_CASE("set_bounds fixes variables") {
    LpModel m;
    int x = m.add_var(0, 1, -1);
    auto s = solve_lp(m);
    CHECK(s.objective == doctest::Approx(0.0));
    m.set_bounds(x, 1, 1);
    s = solve_lp(m);
    CHECK(s.status == LpStatus::optimal);
    CHECK(s.objective == doctest::Approx(-1.0));
}

TEST_CASE("non-binding row leaves the optimum unchanged") {
    LpModel m;
    int x = m.add_var(0, 1, 2);
    int y = m.add_var(0, 1, 1);
    m.add_row({{x, 1.0}, {y, 1.0}}, RowSense::le, 1.5);
    auto s1 = solve_lp(m);
    CHECK(s1.objective == doctest::Approx(2.5));
    m.add_row({{x, 1.0}}, RowSense::le, 1.0);  // satisfied at the optimum
    auto s2 = solve_lp(m);
    CHECK(s2.objective == doctest::Approx(s1.objective));
}

TEST_CASE("re-solving an unmodified model reproduces the objective") {
    std::mt19937_64 rng(777);
    for (int t = 0; t < 30; ++t) {
        LpModel m = random_model(rng, 4, 4);
        auto s1 = solve_lp(m);
        auto s2 = solve_lp(m);
        CHECK(s1.status == s2.status);
        if (s1.status == LpStatus::optimal)
            CHECK(std::fabs(s1.objective - s2.objective) <= 1e-9);
    }
}

TEST_CASE("iteration limit is reported") {
    LpModel m;
    int x = m.add_var(0, 10, 1);
    int y = m.add_var(0, 10, 1);
    m.add_row({{x, 1.0}, {y, 2.0}}, RowSense::le, 10.0);
    m.add_row({{x, 2.0}, {y, 1.0}}, RowSense::le, 10.0);
    LpOptions opts;
    opts.max_iterations = 1;
    auto s = solve_lp(m, opts);
    CHECK(s.status == LpStatus::iteration_limit);
}

TEST_CASE("random LPs match the enumeration oracle") {
    std::mt19937_64 rng(2024);
    int checked = 0;
    for (int t = 0; t < 250; ++t) {
        int nv = 2 + static_cast<int>(rng() % 3);
        int nr = 1 + static_cast<int>(rng() % 4);
        LpModel m = random_model(rng, nv, nr);
        BruteLp brute = brute_lp(m);
        auto s = solve_lp(m);
        if (s.status == LpStatus::optimal) {
            REQUIRE(brute.feasible);
            REQUIRE(s.objective == doctest::Approx(brute.objective).epsilon(1e-7));
            REQUIRE(max_infeasibility(m, s.x) <= 1e-7);
            ++checked;
        } else if (s.status == LpStatus::infeasible) {
            REQUIRE_FALSE(brute.feasible);
        }
        // Bounded boxes in random_model: unbounded cannot occur.
        REQUIRE(s.status != LpStatus::unbounded);
    }
    CHECK(checked > 100);
}

TEST_CASE("cut monotonicity: adding valid rows never increases the optimum") {
    std::mt19937_64 rng(31337);
    for (int t = 0; t < 40; ++t) {
        LpModel m = random_model(rng, 4, 3);
        auto s = solve_lp(m);
        if (s.status != LpStatus::optimal) continue;
        double prev = s.objective;
        for (int round = 0; round < 4; ++round) {
            // A row through the current optimum (always satisfied there).
            std::vector<std::pair<int, double>> terms;
            double act = 0;
            for (int v = 0; v < m.num_vars(); ++v) {
                double c = std::round(3.0 * (double(rng() >> 11) * 0x1.0p-53) - 1.5);
                if (c != 0.0) {
                    terms.emplace_back(v, c);
                    act += c * s.x[v];
                }
            }
            m.add_row(terms, RowSense::le, act + 0.25);
            s = solve_lp(m);
            REQUIRE(s.status == LpStatus::optimal);
            REQUIRE(s.objective <= prev + 1e-9);
            prev = s.objective;
        }
    }
}

TEST_CASE("warm start after branching-style bound changes") {
    LpModel m;
    std::vector<int> xs;
    for (int i = 0; i < 6; ++i) xs.push_back(m.add_var(0, 1, 1.0 + 0.1 * i));
    m.add_row({{xs[0], 1.0}, {xs[1], 1.0}, {xs[2], 1.0}}, RowSense::le, 2.0);
    m.add_row({{xs[3], 1.0}, {xs[4], 1.0}, {xs[5], 1.0}}, RowSense::le, 2.0);
    auto s = solve_lp(m);
    double full = s.objective;
    CHECK(full == doctest::Approx(5.2));  // best two vars of each row
    m.set_bounds(xs[2], 0, 0);
    auto s2 = solve_lp(m);
    CHECK(s2.objective == doctest::Approx(5.0));
    m.set_bounds(xs[2], 0, 1);
    auto s3 = solve_lp(m);
    CHECK(s3.objective == doctest::Approx(full));
}

TEST_CASE("lp text dump mentions rows and bounds") {
    LpModel m;
    int x = m.add_var(0, 1, 5);
    m.add_row({{x, 2.0}}, RowSense::le, 1.0);
    std::string txt = m.to_lp_text();
    CHECK(txt.find("Maximize") != std::string::npos);
    CHECK(txt.find("c0:") != std::string::npos);
    CHECK(txt.find("Bounds") != std::string::npos);
}
