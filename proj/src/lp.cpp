#include "wcm/lp.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>

#include "wcm/instance.hpp"  // format_double

namespace wcm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasTol = 1e-9;    // internal; contract is 1e-7
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-10;  // ratio-test significance
constexpr double kLuPivotTol = 1e-11;
constexpr double kZero = 1e-13;

constexpr signed char kNone = 0;
constexpr signed char kBasic = 1;
constexpr signed char kAtLower = 2;
constexpr signed char kAtUpper = 3;
constexpr signed char kFreeZero = 4;

constexpr int kMaxEtas = 128;
constexpr int kCandidateCap = 64;
constexpr long kStallLimit = 4000;

}  // namespace

int LpModel::add_var(double lo, double hi, double c, bool integ) {
    obj.push_back(c);
    lb.push_back(lo);
    ub.push_back(hi);
    integral.push_back(integ ? 1 : 0);
    cols.emplace_back();
    basis_hint.clear();  // structural columns precede slacks in the hint
    return num_vars() - 1;
}

int LpModel::add_row(const std::vector<std::pair<int, double>>& terms, RowSense s, double r) {
    std::map<int, double> merged;
    for (auto [v, c] : terms) {
        if (v < 0 || v >= num_vars())
            throw std::invalid_argument("add_row: unknown variable id " + std::to_string(v));
        merged[v] += c;
    }
    int row = num_rows();
    for (auto [v, c] : merged)
        if (c != 0.0) cols[v].emplace_back(row, c);
    sense.push_back(s);
    rhs.push_back(r);
    if (!basis_hint.empty()) basis_hint.push_back(kBasic);  // new slack starts basic
    return row;
}

void LpModel::set_bounds(int var, double lo, double hi) {
    if (var < 0 || var >= num_vars())
        throw std::invalid_argument("set_bounds: unknown variable id " + std::to_string(var));
    lb[var] = lo;
    ub[var] = hi;
}

void LpModel::set_objective_coeff(int var, double c) {
    if (var < 0 || var >= num_vars())
        throw std::invalid_argument("set_objective_coeff: unknown variable id");
    obj[var] = c;
}

std::string LpModel::to_lp_text() const {
    std::string out = "Maximize\n obj:";
    for (int v = 0; v < num_vars(); ++v) {
        if (obj[v] == 0.0) continue;
        out += (obj[v] >= 0 ? " + " : " - ") + format_double(std::fabs(obj[v])) + " x" +
               std::to_string(v);
    }
    out += "\nSubject To\n";
    std::vector<std::vector<std::pair<int, double>>> rows(num_rows());
    for (int v = 0; v < num_vars(); ++v)
        for (auto [r, c] : cols[v]) rows[r].emplace_back(v, c);
    for (int r = 0; r < num_rows(); ++r) {
        out += " c" + std::to_string(r) + ":";
        for (auto [v, c] : rows[r])
            out += (c >= 0 ? " + " : " - ") + format_double(std::fabs(c)) + " x" +
                   std::to_string(v);
        out += sense[r] == RowSense::le ? " <= " : sense[r] == RowSense::ge ? " >= " : " = ";
        out += format_double(rhs[r]) + "\n";
    }
    out += "Bounds\n";
    for (int v = 0; v < num_vars(); ++v)
        out += " " + format_double(lb[v]) + " <= x" + std::to_string(v) + " <= " +
               format_double(ub[v]) + "\n";
    out += "End\n";
    return out;
}

double max_infeasibility(const LpModel& model, const std::vector<double>& x) {
    double worst = 0.0;
    for (int v = 0; v < model.num_vars(); ++v) {
        worst = std::max(worst, model.lb[v] - x[v]);
        worst = std::max(worst, x[v] - model.ub[v]);
    }
    std::vector<double> act(model.num_rows(), 0.0);
    for (int v = 0; v < model.num_vars(); ++v)
        for (auto [r, c] : model.cols[v]) act[r] += c * x[v];
    for (int r = 0; r < model.num_rows(); ++r) {
        double diff = act[r] - model.rhs[r];
        switch (model.sense[r]) {
            case RowSense::le: worst = std::max(worst, diff); break;
            case RowSense::ge: worst = std::max(worst, -diff); break;
            case RowSense::eq: worst = std::max(worst, std::fabs(diff)); break;
        }
    }
    return worst;
}

namespace {

// LU factorization of the basis matrix. Singleton rows and columns are
// peeled first (exactly the pseudoforest structure of degree-constrained
// bases), leaving a small dense kernel.
struct Factorization {
    int R = 0;
    std::vector<int> pr, pc;        // pivot row / basis position, elimination order
    std::vector<double> pivval;
    std::vector<std::vector<std::pair<int, double>>> lcol;  // (elim index, mult)
    std::vector<std::vector<std::pair<int, double>>> urow;  // (elim index, val)
    std::vector<int> elim_of_row, elim_of_pos;
    std::vector<double> scratch_a, scratch_b;

    bool build(int rows, const std::vector<std::vector<std::pair<int, double>>>& bcols) {
        R = rows;
        pr.clear();
        pc.clear();
        pivval.clear();
        lcol.clear();
        urow.clear();
        pr.reserve(R);
        pc.reserve(R);
        pivval.reserve(R);
        lcol.resize(R);
        urow.resize(R);
        scratch_a.assign(R, 0.0);
        scratch_b.assign(R, 0.0);

        std::vector<std::vector<std::pair<int, double>>> rowmaj(R);
        for (int p = 0; p < R; ++p)
            for (auto [r, v] : bcols[p]) rowmaj[r].emplace_back(p, v);

        std::vector<char> row_active(R, 1), col_active(R, 1);
        std::vector<int> row_count(R, 0), col_count(R, 0);
        for (int p = 0; p < R; ++p) col_count[p] = static_cast<int>(bcols[p].size());
        for (int r = 0; r < R; ++r) row_count[r] = static_cast<int>(rowmaj[r].size());

        std::vector<int> rq, cq;
        for (int r = 0; r < R; ++r)
            if (row_count[r] == 1) rq.push_back(r);
        for (int p = 0; p < R; ++p)
            if (col_count[p] == 1) cq.push_back(p);

        int done = 0;
        size_t rq_head = 0, cq_head = 0;
        while (done < R) {
            int pivot_r = -1, pivot_c = -1;
            while (rq_head < rq.size()) {
                int r = rq[rq_head++];
                if (row_active[r] && row_count[r] == 1) {
                    pivot_r = r;
                    break;
                }
            }
            if (pivot_r >= 0) {
                double pv = 0.0;
                for (auto [p, v] : rowmaj[pivot_r]) {
                    if (col_active[p]) {
                        pivot_c = p;
                        pv = v;
                        break;
                    }
                }
                if (pivot_c < 0 || std::fabs(pv) <= kLuPivotTol) return false;
                int step = done++;
                pr.push_back(pivot_r);
                pc.push_back(pivot_c);
                pivval.push_back(pv);
                // Other active rows lose their pivot-column entry; the pivot
                // row is a singleton so no values change.
                for (auto [r2, v2] : bcols[pivot_c]) {
                    if (r2 == pivot_r || !row_active[r2]) continue;
                    lcol[step].emplace_back(r2, v2 / pv);  // remapped to elim index below
                    if (--row_count[r2] == 1) rq.push_back(r2);
                }
                row_active[pivot_r] = 0;
                col_active[pivot_c] = 0;
                continue;
            }
            while (cq_head < cq.size()) {
                int p = cq[cq_head++];
                if (col_active[p] && col_count[p] == 1) {
                    pivot_c = p;
                    break;
                }
            }
            if (pivot_c >= 0) {
                double pv = 0.0;
                pivot_r = -1;
                for (auto [r, v] : bcols[pivot_c]) {
                    if (row_active[r]) {
                        pivot_r = r;
                        pv = v;
                        break;
                    }
                }
                if (pivot_r < 0 || std::fabs(pv) <= kLuPivotTol) return false;
                int step = done++;
                pr.push_back(pivot_r);
                pc.push_back(pivot_c);
                pivval.push_back(pv);
                for (auto [p2, v2] : rowmaj[pivot_r]) {
                    if (p2 == pivot_c || !col_active[p2]) continue;
                    urow[step].emplace_back(p2, v2);  // remapped below
                    if (--col_count[p2] == 1) cq.push_back(p2);
                }
                row_active[pivot_r] = 0;
                col_active[pivot_c] = 0;
                continue;
            }

            // Dense kernel.
            std::vector<int> kr, kc;
            for (int r = 0; r < R; ++r)
                if (row_active[r]) kr.push_back(r);
            for (int p = 0; p < R; ++p)
                if (col_active[p]) kc.push_back(p);
            const int k = static_cast<int>(kr.size());
            if (k != static_cast<int>(kc.size()) || k == 0) return false;

            std::vector<int> row_slot(R, -1);
            for (int a = 0; a < k; ++a) row_slot[kr[a]] = a;
            std::vector<double> dense(static_cast<size_t>(k) * k, 0.0);
            for (int b = 0; b < k; ++b)
                for (auto [r, v] : bcols[kc[b]])
                    if (row_slot[r] >= 0) dense[static_cast<size_t>(row_slot[r]) * k + b] = v;

            std::vector<int> actual_row = kr;
            for (int step = 0; step < k; ++step) {
                int arg = -1;
                double best = kLuPivotTol;
                for (int a = step; a < k; ++a) {
                    double v = std::fabs(dense[static_cast<size_t>(a) * k + step]);
                    if (v > best) {
                        best = v;
                        arg = a;
                    }
                }
                if (arg < 0) return false;
                if (arg != step) {
                    for (int b = 0; b < k; ++b)
                        std::swap(dense[static_cast<size_t>(arg) * k + b],
                                  dense[static_cast<size_t>(step) * k + b]);
                    std::swap(actual_row[arg], actual_row[step]);
                }
                double pv = dense[static_cast<size_t>(step) * k + step];
                int elim = done++;
                pr.push_back(actual_row[step]);
                pc.push_back(kc[step]);
                pivval.push_back(pv);
                for (int a = step + 1; a < k; ++a) {
                    double mult = dense[static_cast<size_t>(a) * k + step] / pv;
                    if (std::fabs(mult) > kZero) {
                        lcol[elim].emplace_back(actual_row[a], mult);
                        double* ra = &dense[static_cast<size_t>(a) * k];
                        const double* rs = &dense[static_cast<size_t>(step) * k];
                        for (int b = step + 1; b < k; ++b) ra[b] -= mult * rs[b];
                    }
                    dense[static_cast<size_t>(a) * k + step] = 0.0;
                }
                for (int b = step + 1; b < k; ++b) {
                    double v = dense[static_cast<size_t>(step) * k + b];
                    if (std::fabs(v) > kZero) urow[elim].emplace_back(kc[b], v);
                }
            }
            break;
        }
        if (done != R) return false;

        elim_of_row.assign(R, -1);
        elim_of_pos.assign(R, -1);
        for (int i = 0; i < R; ++i) {
            elim_of_row[pr[i]] = i;
            elim_of_pos[pc[i]] = i;
        }
        for (int i = 0; i < R; ++i) {
            for (auto& e : lcol[i]) e.first = elim_of_row[e.first];
            for (auto& e : urow[i]) e.first = elim_of_pos[e.first];
        }
        return true;
    }

    // out_by_pos = B^{-1} v_by_row
    void ftran(const double* v_by_row, double* out_by_pos) {
        double* ve = scratch_a.data();
        double* ze = scratch_b.data();
        for (int i = 0; i < R; ++i) ve[i] = v_by_row[pr[i]];
        for (int i = 0; i < R; ++i) {
            double t = ve[i];
            if (t != 0.0)
                for (auto [je, mult] : lcol[i]) ve[je] -= mult * t;
        }
        for (int i = R - 1; i >= 0; --i) {
            double t = ve[i];
            for (auto [ce, val] : urow[i]) t -= val * ze[ce];
            ze[i] = t / pivval[i];
        }
        for (int i = 0; i < R; ++i) out_by_pos[pc[i]] = ze[i];
    }

    // out_by_row = B^{-T} c_by_pos
    void btran(const double* c_by_pos, double* out_by_row) {
        double* work = scratch_a.data();
        for (int i = 0; i < R; ++i) work[i] = c_by_pos[pc[i]];
        for (int i = 0; i < R; ++i) {
            work[i] /= pivval[i];
            double t = work[i];
            if (t != 0.0)
                for (auto [ce, val] : urow[i]) work[ce] -= val * t;
        }
        for (int i = R - 1; i >= 0; --i) {
            double t = work[i];
            for (auto [je, mult] : lcol[i]) t -= mult * work[je];
            work[i] = t;
        }
        for (int i = 0; i < R; ++i) out_by_row[pr[i]] = work[i];
    }
};

struct Eta {
    int r = 0;        // basis position of the pivot
    double wr = 1.0;  // pivot element of the transformed entering column
    std::vector<std::pair<int, double>> col;  // (position, value), excluding r
};

enum class StepResult { moved, no_candidate, unbounded, iteration_limit };

class Simplex {
public:
    Simplex(LpModel& model, const LpOptions& options) : M(model), opts(options) {
        R = M.num_rows();
        NV = M.num_vars();
        C = NV + R;
    }

    LpSolution run() {
        LpSolution sol;
        setup_columns();
        for (int c = 0; c < C; ++c) {
            if (lo[c] > hi[c] + kFeasTol) {
                sol.status = LpStatus::infeasible;  // trivially inconsistent bounds
                sol.x.assign(NV, 0.0);
                return sol;
            }
        }
        restore_or_reset_basis();

        int safety = 0;
        while (true) {
            if (!refactorize()) {
                reset_slack_basis();
                if (!refactorize()) throw std::runtime_error("solve_lp: singular slack basis");
            }
            compute_basics();

            StepResult p1 = run_phase(true);
            if (p1 == StepResult::iteration_limit) return finish(sol, LpStatus::iteration_limit);
            if (p1 == StepResult::unbounded) return finish(sol, LpStatus::infeasible);
            if (infeasibility() > 1e-8) return finish(sol, LpStatus::infeasible);

            StepResult p2 = run_phase(false);
            if (p2 == StepResult::iteration_limit) return finish(sol, LpStatus::iteration_limit);
            if (p2 == StepResult::unbounded) return finish(sol, LpStatus::unbounded);

            // Clean recompute; resume if drift pushed a basic out of bounds.
            if (!refactorize()) {
                reset_slack_basis();
                if (!refactorize()) throw std::runtime_error("solve_lp: singular slack basis");
            }
            compute_basics();
            if (infeasibility() <= kFeasTol || ++safety >= 3) break;
        }
        return finish(sol, LpStatus::optimal);
    }

private:
    LpModel& M;
    const LpOptions& opts;
    int R = 0, NV = 0, C = 0;

    std::vector<double> lo, hi, cost, xval;
    std::vector<signed char> stat;
    std::vector<int> basis, pos_of;
    Factorization fact;
    std::vector<Eta> etas;
    std::vector<double> work_pos, work_row, wcol;
    std::vector<int> wnz;
    long iters = 0;
    long degen_streak = 0;
    bool bland = false;
    std::vector<int> candidates;

    // Structural columns in compressed form for fast pricing sweeps.
    std::vector<int> csc_ptr, csc_row;
    std::vector<double> csc_val;

    template <typename F>
    void for_col(int c, F&& f) const {
        if (c < NV) {
            for (int k = csc_ptr[c]; k < csc_ptr[c + 1]; ++k) f(csc_row[k], csc_val[k]);
        } else {
            f(c - NV, 1.0);
        }
    }

    void setup_columns() {
        csc_ptr.assign(NV + 1, 0);
        size_t nnz = 0;
        for (int v = 0; v < NV; ++v) nnz += M.cols[v].size();
        csc_row.reserve(nnz);
        csc_val.reserve(nnz);
        for (int v = 0; v < NV; ++v) {
            for (auto [r, val] : M.cols[v]) {
                csc_row.push_back(r);
                csc_val.push_back(val);
            }
            csc_ptr[v + 1] = static_cast<int>(csc_row.size());
        }

        lo.resize(C);
        hi.resize(C);
        cost.assign(C, 0.0);
        for (int v = 0; v < NV; ++v) {
            lo[v] = M.lb[v];
            hi[v] = M.ub[v];
            cost[v] = M.obj[v];
        }
        for (int r = 0; r < R; ++r) {
            int c = NV + r;
            switch (M.sense[r]) {
                case RowSense::le: lo[c] = 0.0; hi[c] = kInf; break;
                case RowSense::ge: lo[c] = -kInf; hi[c] = 0.0; break;
                case RowSense::eq: lo[c] = 0.0; hi[c] = 0.0; break;
            }
        }
        xval.assign(C, 0.0);
        work_pos.assign(R, 0.0);
        work_row.assign(R, 0.0);
        wcol.assign(R, 0.0);
    }

    void snap_nonbasic(int c) {
        if (stat[c] == kAtLower && std::isfinite(lo[c])) {
            xval[c] = lo[c];
        } else if (stat[c] == kAtUpper && std::isfinite(hi[c])) {
            xval[c] = hi[c];
        } else if (std::isfinite(lo[c])) {
            stat[c] = kAtLower;
            xval[c] = lo[c];
        } else if (std::isfinite(hi[c])) {
            stat[c] = kAtUpper;
            xval[c] = hi[c];
        } else {
            stat[c] = kFreeZero;
            xval[c] = 0.0;
        }
    }

    void reset_slack_basis() {
        stat.assign(C, kNone);
        for (int r = 0; r < R; ++r) stat[NV + r] = kBasic;
        for (int v = 0; v < NV; ++v) {
            stat[v] = kAtLower;
            snap_nonbasic(v);
        }
        rebuild_basis_arrays();
    }

    void restore_or_reset_basis() {
        bool ok = static_cast<int>(M.basis_hint.size()) == C;
        if (ok) {
            int basic_count = 0;
            for (int c = 0; c < C; ++c)
                if (M.basis_hint[c] == kBasic) ++basic_count;
            ok = basic_count == R;
        }
        if (!ok) {
            reset_slack_basis();
            return;
        }
        stat.assign(M.basis_hint.begin(), M.basis_hint.end());
        for (int c = 0; c < C; ++c)
            if (stat[c] != kBasic) snap_nonbasic(c);
        rebuild_basis_arrays();
    }

    void rebuild_basis_arrays() {
        basis.clear();
        pos_of.assign(C, -1);
        for (int c = 0; c < C; ++c) {
            if (stat[c] == kBasic) {
                pos_of[c] = static_cast<int>(basis.size());
                basis.push_back(c);
            }
        }
    }

    bool refactorize() {
        etas.clear();
        std::vector<std::vector<std::pair<int, double>>> bcols(R);
        for (int p = 0; p < R; ++p) {
            for_col(basis[p], [&](int r, double v) { bcols[p].emplace_back(r, v); });
        }
        return fact.build(R, bcols);
    }

    void compute_basics() {
        std::vector<double> rhs = M.rhs;
        for (int c = 0; c < C; ++c) {
            if (stat[c] == kBasic || xval[c] == 0.0) continue;
            double xv = xval[c];
            for_col(c, [&](int r, double v) { rhs[r] -= v * xv; });
        }
        fact.ftran(rhs.data(), work_pos.data());
        apply_etas_ftran(work_pos.data());
        for (int p = 0; p < R; ++p) xval[basis[p]] = work_pos[p];
    }

    void apply_etas_ftran(double* u) const {
        for (const Eta& e : etas) {
            double t = u[e.r] / e.wr;
            u[e.r] = t;
            if (t != 0.0)
                for (auto [p, v] : e.col) u[p] -= v * t;
        }
    }

    void apply_etas_btran(double* c) const {
        for (auto it = etas.rbegin(); it != etas.rend(); ++it) {
            double t = c[it->r];
            for (auto [p, v] : it->col) t -= v * c[p];
            c[it->r] = t / it->wr;
        }
    }

    // w := B^{-1} A_q, dense with nonzero index list.
    void ftran_column(int q) {
        std::fill(work_row.begin(), work_row.end(), 0.0);
        for_col(q, [&](int r, double v) { work_row[r] += v; });
        fact.ftran(work_row.data(), wcol.data());
        apply_etas_ftran(wcol.data());
        wnz.clear();
        for (int p = 0; p < R; ++p)
            if (std::fabs(wcol[p]) > kZero) wnz.push_back(p);
    }

    // y by row for pricing; phase 1 uses the infeasibility signature.
    void compute_duals(bool phase1, std::vector<double>& y) {
        std::vector<double>& cb = work_pos;
        std::fill(cb.begin(), cb.end(), 0.0);
        if (phase1) {
            for (int p = 0; p < R; ++p) {
                int c = basis[p];
                if (xval[c] < lo[c] - kFeasTol)
                    cb[p] = 1.0;
                else if (xval[c] > hi[c] + kFeasTol)
                    cb[p] = -1.0;
            }
        } else {
            for (int p = 0; p < R; ++p) cb[p] = cost[basis[p]];
        }
        apply_etas_btran(cb.data());
        y.assign(R, 0.0);
        fact.btran(cb.data(), y.data());
    }

    double reduced(int c, bool phase1, const std::vector<double>& y) const {
        double dot = 0.0;
        for_col(c, [&](int r, double v) { dot += y[r] * v; });
        // Uniform sign convention: positive means "increase improves".
        return phase1 ? -dot : cost[c] - dot;
    }

    // Direction (+1/-1) if entering c improves, else 0.
    int entering_direction(int c, double d) const {
        if (stat[c] == kAtLower) return d > kDualTol ? 1 : 0;
        if (stat[c] == kAtUpper) return d < -kDualTol ? -1 : 0;
        if (stat[c] == kFreeZero) {
            if (d > kDualTol) return 1;
            if (d < -kDualTol) return -1;
        }
        return 0;
    }

    // Scans for an entering column; returns (col, dir) or {-1, 0}.
    std::pair<int, int> price(bool phase1, const std::vector<double>& y) {
        if (bland) {
            for (int c = 0; c < C; ++c) {
                if (stat[c] == kBasic) continue;
                int dir = entering_direction(c, reduced(c, phase1, y));
                if (dir != 0) return {c, dir};
            }
            return {-1, 0};
        }
        // Re-check cached candidates first; they stay near-valid for a few
        // basis changes, amortizing the full sweeps below.
        int best = -1, best_dir = 0;
        double best_score = 0.0;
        auto consider = [&](int c, double d, int dir) {
            if (std::fabs(d) > best_score) {
                best_score = std::fabs(d);
                best = c;
                best_dir = dir;
            }
        };
        for (int c : candidates) {
            if (stat[c] == kBasic) continue;
            double d = reduced(c, phase1, y);
            int dir = entering_direction(c, d);
            if (dir != 0) consider(c, d, dir);
        }
        if (best >= 0) return {best, best_dir};

        // Full sweep keeping the top candidates by |reduced cost|.
        candidates.clear();
        std::vector<std::pair<double, int>> top;  // (|d|, col), min-heap
        top.reserve(kCandidateCap + 1);
        auto cmp = [](const auto& a, const auto& b) { return a.first > b.first; };
        for (int c = 0; c < C; ++c) {
            if (stat[c] == kBasic) continue;
            double d = reduced(c, phase1, y);
            if (entering_direction(c, d) == 0) continue;
            double score = std::fabs(d);
            if (static_cast<int>(top.size()) < kCandidateCap) {
                top.emplace_back(score, c);
                std::push_heap(top.begin(), top.end(), cmp);
            } else if (score > top.front().first) {
                std::pop_heap(top.begin(), top.end(), cmp);
                top.back() = {score, c};
                std::push_heap(top.begin(), top.end(), cmp);
            }
        }
        for (auto& [score, c] : top) {
            candidates.push_back(c);
            double d = reduced(c, phase1, y);
            int dir = entering_direction(c, d);
            if (dir != 0) consider(c, d, dir);
        }
        return {best, best_dir};
    }

    double infeasibility() const {
        double total = 0.0;
        for (int p = 0; p < R; ++p) {
            int c = basis[p];
            if (xval[c] < lo[c]) total += lo[c] - xval[c];
            if (xval[c] > hi[c]) total += xval[c] - hi[c];
        }
        return total;
    }

    StepResult run_phase(bool phase1) {
        std::vector<double> y;
        int rescues = 0;
        static const bool debug = std::getenv("WCM_LP_DEBUG") != nullptr;
        long next_report = 10000;
        while (true) {
            if (phase1 && infeasibility() <= kFeasTol) return StepResult::no_candidate;
            if (iters >= opts.max_iterations) return StepResult::iteration_limit;
            if (debug && iters >= next_report) {
                double obj = 0;
                for (int v = 0; v < NV; ++v)
                    if (M.obj[v] != 0.0) obj += M.obj[v] * xval[v];
                std::fprintf(stderr, "[lp] iters=%ld phase=%d obj=%.6f infeas=%.3e etas=%zu bland=%d degen=%ld\n",
                             iters, phase1 ? 1 : 2, obj, infeasibility(), etas.size(), bland ? 1 : 0,
                             degen_streak);
                next_report = iters + 10000;
            }
            compute_duals(phase1, y);
            auto [q, dir] = price(phase1, y);
            if (q < 0) {
                if (bland) {
                    bland = false;
                    degen_streak = 0;
                }
                return StepResult::no_candidate;
            }
            StepResult s = step(q, dir, phase1);
            if (s == StepResult::unbounded) {
                if (phase1 && rescues++ < 2) {
                    // A bounded phase-1 step found no blocker: numerical
                    // drift; redo from a clean factorization.
                    if (!refactorize()) return StepResult::unbounded;
                    compute_basics();
                    continue;
                }
                return StepResult::unbounded;
            }
        }
    }

    StepResult step(int q, int dir, bool phase1) {
        ++iters;
        ftran_column(q);

        double own_span = (std::isfinite(lo[q]) && std::isfinite(hi[q])) ? hi[q] - lo[q] : kInf;
        double best_delta = kInf;
        int best_row = -1;
        double best_pivot = 0.0;
        bool best_hits_upper = false;

        for (int p : wnz) {
            double wp = wcol[p];
            if (std::fabs(wp) <= kPivotTol) continue;
            int bc = basis[p];
            double xv = xval[bc];
            double rate = -dir * wp;  // basic movement per unit entering increase
            double limit = kInf;
            bool hits_upper = false;
            if (phase1 && xv < lo[bc] - kFeasTol) {
                if (rate > 0) {
                    limit = (lo[bc] - xv) / rate;
                    hits_upper = false;
                }
            } else if (phase1 && xv > hi[bc] + kFeasTol) {
                if (rate < 0) {
                    limit = (xv - hi[bc]) / (-rate);
                    hits_upper = true;
                }
            } else if (rate > 0) {
                if (std::isfinite(hi[bc])) {
                    limit = (hi[bc] - xv) / rate;
                    hits_upper = true;
                }
            } else {
                if (std::isfinite(lo[bc])) {
                    limit = (xv - lo[bc]) / (-rate);
                    hits_upper = false;
                }
            }
            if (limit == kInf) continue;
            limit = std::max(limit, 0.0);
            bool take;
            if (best_row < 0 || limit < best_delta - 1e-12) {
                take = true;
            } else if (limit <= best_delta + 1e-12) {
                take = bland ? basis[p] < basis[best_row]
                             : std::fabs(wp) > std::fabs(best_pivot);
            } else {
                take = false;
            }
            if (take) {
                best_delta = limit;
                best_row = p;
                best_pivot = wp;
                best_hits_upper = hits_upper;
            }
        }

        (void)phase1;
        double delta = std::min(best_delta, own_span);
        if (delta == kInf) return StepResult::unbounded;

        // Apply the move.
        if (delta != 0.0) {
            xval[q] += dir * delta;
            for (int p : wnz) xval[basis[p]] -= dir * delta * wcol[p];
        }
        if (delta > 1e-12) {
            degen_streak = 0;
        } else if (++degen_streak > kStallLimit) {
            bland = true;
        }

        if (own_span <= best_delta) {
            // Bound flip, no basis change.
            stat[q] = stat[q] == kAtLower ? kAtUpper : kAtLower;
            xval[q] = stat[q] == kAtLower ? lo[q] : hi[q];
            return StepResult::moved;
        }

        int leave = basis[best_row];
        xval[leave] = best_hits_upper ? hi[leave] : lo[leave];
        stat[leave] = best_hits_upper ? kAtUpper : kAtLower;
        if (lo[leave] == hi[leave]) stat[leave] = kAtLower;
        pos_of[leave] = -1;
        basis[best_row] = q;
        stat[q] = kBasic;
        pos_of[q] = best_row;

        Eta e;
        e.r = best_row;
        e.wr = wcol[best_row];
        for (int p : wnz)
            if (p != best_row) e.col.emplace_back(p, wcol[p]);
        etas.push_back(std::move(e));

        if (static_cast<int>(etas.size()) > kMaxEtas) {
            if (!refactorize()) {
                reset_slack_basis();
                if (!refactorize()) throw std::runtime_error("solve_lp: singular basis");
            }
            compute_basics();
        }
        return StepResult::moved;
    }

    LpSolution finish(LpSolution& sol, LpStatus status) {
        sol.status = status;
        sol.iterations = iters;
        sol.x.assign(NV, 0.0);
        for (int v = 0; v < NV; ++v) sol.x[v] = xval[v];
        sol.objective = 0.0;
        for (int v = 0; v < NV; ++v)
            if (M.obj[v] != 0.0) sol.objective += M.obj[v] * xval[v];
        M.basis_hint.assign(stat.begin(), stat.end());
        return sol;
    }
};

}  // namespace

LpSolution solve_lp(LpModel& model, const LpOptions& opts) {
    Simplex s(model, opts);
    return s.run();
}

}  // namespace wcm
