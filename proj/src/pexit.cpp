#include "gldpc/pexit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gldpc {

PexitProblem make_ldpc_problem(const BaseMatrix& base) {
    base.validate();
    PexitProblem p;
    p.base = base;
    p.mode = PexitMode::ldpc;
    return p;
}

PexitProblem make_pd_problem(const BaseMatrix& base, const DopingSpec& spec) {
    base.validate();
    spec.validate(base);
    PexitProblem p;
    p.base = base;
    p.mode = PexitMode::pd;
    p.doped_cols = spec.doped_cols;
    p.exit = exit_oracle_poly(spec.code);
    return p;
}

PexitProblem make_conventional_problem(const BaseMatrix& base, int check_idx,
                                       const ComponentCode& code) {
    base.validate();
    if (check_idx < 0 || check_idx >= base.n_c()) {
        throw std::invalid_argument("pexit: check index out of range");
    }
    if (base.row_degree(check_idx) != code.mu) {
        throw std::invalid_argument("pexit: GC check degree != component length");
    }
    PexitProblem p;
    p.base = base;
    p.mode = PexitMode::conventional;
    p.gc_checks = {check_idx};
    p.exit = exit_oracle_poly(code);
    return p;
}

namespace {

// (1-a)^(h-1) a^(mu-h) bracket evaluation with running powers; equivalent to
// exit_oracle_eval but without pow() in the innermost PEXIT loop.
double exit_poly_fast(const ExitOraclePoly& poly, double a) {
    const int mu = poly.mu;
    thread_local std::vector<double> apow;
    apow.resize(mu + 1);
    apow[0] = 1.0;
    for (int k = 1; k <= mu; ++k) apow[k] = apow[k - 1] * a;
    double sum = 0.0;
    double pow_one_m = 1.0;  // (1-a)^(h-1), h starting at 1
    for (int h = 1; h <= mu; ++h) {
        if (poly.D[h] != 0.0) sum += pow_one_m * apow[mu - h] * poly.D[h];
        pow_one_m *= (1.0 - a);
    }
    sum /= mu;
    return std::min(1.0, std::max(0.0, sum));
}

}  // namespace

PexitOutcome pexit_evaluate(const PexitProblem& problem, double epsilon, const PexitConfig& cfg) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("pexit: epsilon must be in [0, 1]");
    }
    const BaseMatrix& B = problem.base;
    const int n_c = B.n_c(), n_v = B.n_v();

    // Edge list with parallel copies expanded.
    std::vector<int> ei, ej;
    for (int i = 0; i < n_c; ++i) {
        for (int j = 0; j < n_v; ++j) {
            for (int k = 0; k < B.b(i, j); ++k) {
                ei.push_back(i);
                ej.push_back(j);
            }
        }
    }
    const int E = static_cast<int>(ei.size());

    std::vector<char> doped(n_v, 0);
    if (problem.mode == PexitMode::pd) {
        for (int j : problem.doped_cols) doped[j] = 1;
    }
    std::vector<char> gc_row(n_c, 0);
    if (problem.mode == PexitMode::conventional) {
        for (int i : problem.gc_checks) gc_row[i] = 1;
    }

    std::vector<double> I_AV(E, 0.0), I_EV(E), I_AV_new(E);
    std::vector<double> I_EGC_b(n_v, 0.0);
    std::vector<double> col_prod_nz(n_v), col_zeros(n_v);
    std::vector<double> row_prod_nz(n_c), row_zeros(n_c), row_sum(n_c), row_deg(n_c);

    auto column_pass = [&](const std::vector<double>& av) {
        std::fill(col_prod_nz.begin(), col_prod_nz.end(), 1.0);
        std::fill(col_zeros.begin(), col_zeros.end(), 0.0);
        for (int e = 0; e < E; ++e) {
            double one_m = 1.0 - av[e];
            if (one_m > 0.0)
                col_prod_nz[ej[e]] *= one_m;
            else
                col_zeros[ej[e]] += 1.0;
        }
    };

    PexitOutcome out;
    for (int it = 0; it < cfg.max_iters; ++it) {
        // Variable-to-check messages (exclusion product over the column).
        column_pass(I_AV);
        for (int e = 0; e < E; ++e) {
            double one_m = 1.0 - I_AV[e];
            double excl;
            if (col_zeros[ej[e]] == 0.0)
                excl = col_prod_nz[ej[e]] / one_m;
            else if (col_zeros[ej[e]] == 1.0 && one_m == 0.0)
                excl = col_prod_nz[ej[e]];
            else
                excl = 0.0;
            double gcfac = doped[ej[e]] ? 1.0 - I_EGC_b[ej[e]] : 1.0;
            I_EV[e] = 1.0 - epsilon * excl * gcfac;
        }

        // PD virtual GC nodes, refreshed from the pre-update messages. The
        // variable-to-check step above intentionally used last iteration's
        // values; the APP step below uses these fresh ones.
        if (problem.mode == PexitMode::pd) {
            for (int j : problem.doped_cols) {
                double full = col_zeros[j] == 0.0 ? col_prod_nz[j] : 0.0;
                I_EGC_b[j] = exit_poly_fast(problem.exit, 1.0 - epsilon * full);
            }
        }

        // Check-to-variable messages.
        std::fill(row_prod_nz.begin(), row_prod_nz.end(), 1.0);
        std::fill(row_zeros.begin(), row_zeros.end(), 0.0);
        for (int e = 0; e < E; ++e) {
            if (I_EV[e] > 0.0)
                row_prod_nz[ei[e]] *= I_EV[e];
            else
                row_zeros[ei[e]] += 1.0;
        }
        for (int e = 0; e < E; ++e) {
            double excl;
            if (row_zeros[ei[e]] == 0.0)
                excl = row_prod_nz[ei[e]] / I_EV[e];
            else if (row_zeros[ei[e]] == 1.0 && I_EV[e] == 0.0)
                excl = row_prod_nz[ei[e]];
            else
                excl = 0.0;
            I_AV_new[e] = excl;
        }
        if (problem.mode == PexitMode::conventional) {
            std::fill(row_sum.begin(), row_sum.end(), 0.0);
            std::fill(row_deg.begin(), row_deg.end(), 0.0);
            for (int e = 0; e < E; ++e) {
                row_sum[ei[e]] += I_EV[e];
                row_deg[ei[e]] += 1.0;
            }
            for (int i : problem.gc_checks) {
                double iegc = exit_poly_fast(problem.exit, row_sum[i] / row_deg[i]);
                for (int e = 0; e < E; ++e) {
                    if (ei[e] == i) I_AV_new[e] = iegc;
                }
            }
        }

        double delta_msg = 0.0;
        for (int e = 0; e < E; ++e) delta_msg = std::max(delta_msg, std::abs(I_AV_new[e] - I_AV[e]));
        I_AV.swap(I_AV_new);

        // APP convergence test.
        column_pass(I_AV);
        bool all_done = true;
        for (int j = 0; j < n_v; ++j) {
            double full = col_zeros[j] == 0.0 ? col_prod_nz[j] : 0.0;
            double gcapp = (problem.mode == PexitMode::pd && doped[j]) ? 1.0 - I_EGC_b[j] : 1.0;
            double app = 1.0 - epsilon * full * gcapp;
            if (!std::isfinite(app)) throw std::runtime_error("pexit: non-finite message");
            if (app < 1.0 - cfg.delta_conv) {
                all_done = false;
                break;
            }
        }
        if (!std::isfinite(delta_msg)) throw std::runtime_error("pexit: non-finite message");
        out.iterations = it + 1;
        if (all_done) {
            out.success = true;
            break;
        }
        if (delta_msg < cfg.stall_tol && it > 2) {
            out.success = false;
            break;
        }
    }
    if (cfg.final_messages) *cfg.final_messages = I_AV;
    return out;
}

ThresholdResult threshold(const PexitProblem& problem, double tol, const PexitConfig& cfg) {
    if (!(tol > 0.0)) throw std::invalid_argument("threshold: tolerance must be positive");
    double lo = 0.0, hi = 1.0;
    ThresholdResult res;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        PexitOutcome o = pexit_evaluate(problem, mid, cfg);
        if (o.success) {
            lo = mid;
            res.converged = true;
            res.iterations_at_threshold = o.iterations;
        } else {
            hi = mid;
        }
    }
    res.epsilon_star = 0.5 * (lo + hi);
    res.bisection_width = hi - lo;
    return res;
}

double de_threshold(const EnsembleDistribution& E, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("de_threshold: tolerance must be positive");
    std::vector<std::pair<int, double>> lam(E.lambda.begin(), E.lambda.end());
    std::vector<std::pair<int, double>> rho(E.rho.begin(), E.rho.end());
    auto poly_eval = [](const std::vector<std::pair<int, double>>& p, double xv) {
        double s = 0.0;
        for (const auto& [d, c] : p) {
            double t = 1.0;
            for (int k = 1; k < d; ++k) t *= xv;  // x^(d-1), degrees are small
            s += c * t;
        }
        return s;
    };
    auto succeeds = [&](double eps) {
        double x = eps;
        for (int k = 0; k < 8000; ++k) {
            double xn = eps * poly_eval(lam, 1.0 - poly_eval(rho, 1.0 - x));
            if (xn < 1e-13) return true;
            if (xn >= x - 1e-15) return false;
            x = xn;
        }
        return x < 1e-13;
    };
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (succeeds(mid))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace gldpc
