#include "gldpc/ensemble_opt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gldpc/peg.hpp"
#include "gldpc/rng.hpp"

namespace gldpc {

namespace {

double rational_to_double(Rational r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

int exact_int(Rational r, const char* what) {
    if (r.denominator() != 1) {
        throw std::invalid_argument(std::string(what) + " is not an integer for these parameters");
    }
    return static_cast<int>(r.numerator());
}

}  // namespace

PdProtographBuild build_doped_protograph(int n_c, int n_v, const DegreeCountVector& degrees,
                                         int x, const ComponentCode& code, uint64_t rng_seed,
                                         int max_retries) {
    PegConfig peg;
    peg.n_c = n_c;
    peg.n_v = n_v;
    peg.target_degrees = degrees;
    PdProtographBuild out;
    out.spec.code = code;
    out.spec.doped_cols.resize(x);
    for (int j = 0; j < x; ++j) out.spec.doped_cols[j] = j;
    out.spec.y = (x % code.mu == 0) ? x / code.mu : 0;

    for (int attempt = 0; attempt < max_retries; ++attempt) {
        peg.rng_seed = substream(rng_seed, "proto-draw", attempt).next();
        BaseMatrix B = peg_build(peg);
        if (typical_dmin_check(B, out.spec).ok) {
            out.base = std::move(B);
            out.attempts = attempt + 1;
            return out;
        }
    }
    throw std::domain_error("doped protograph: no acyclic degree-2 draw within " +
                            std::to_string(max_retries) + " retries");
}

RegularResult construct_regular(const RegularDesign& d) {
    d.code.validate();
    if (d.w_r < 2) throw std::invalid_argument("construct_regular: w_r must be >= 2");
    const int mu = d.code.mu, kappa = d.code.kappa, m = d.code.m();
    const int nc0 = exact_int(Rational(d.n_v) * (Rational(1) - d.R), "n_v (1-R)");

    const int y_lo = necessary_doping_bound_regular(d.n_v, nc0, mu, kappa);
    const int y_hi = d.n_v / mu;
    if (y_lo > y_hi) {
        throw std::domain_error("construct_regular: no feasible y (rate too high for this component)");
    }

    DegreeCountVector degrees;
    degrees.pairs = {{d.w_r, d.n_v}};

    RegularResult res;
    res.y_range = {y_lo, y_hi};
    double best = -1.0;
    for (int y = y_lo; y <= y_hi; ++y) {
        const int n_c = nc0 - m * y;
        if (n_c < 1) break;
        PdProtographBuild built;
        try {
            built = build_doped_protograph(n_c, d.n_v, degrees, y * mu, d.code,
                                           substream(d.rng_seed, "regular-y", y).next(),
                                           d.max_retries);
        } catch (const std::domain_error&) {
            continue;  // this y never produced an acyclic draw; sweep the rest
        }
        ThresholdResult thr = threshold(make_pd_problem(built.base, built.spec), d.threshold_tol);
        res.per_y.push_back({y, thr.epsilon_star, built.attempts});
        if (thr.epsilon_star > best) {
            best = thr.epsilon_star;
            res.y_best = y;
            res.base = built.base;
            res.spec = built.spec;
            res.thr = thr;
        }
    }
    if (res.per_y.empty()) {
        throw std::domain_error("construct_regular: typical-minimum-distance retries exhausted for every y");
    }
    return res;
}

void DeConfig::validate() const {
    code.validate();
    if (population < 4) throw std::invalid_argument("DE: population must be >= 4");
    if (!(F > 0.0 && F <= 2.0)) throw std::invalid_argument("DE: F must be in (0, 2]");
    if (!(CR >= 0.0 && CR <= 1.0)) throw std::invalid_argument("DE: CR must be in [0, 1]");
    if (generations < 1) throw std::invalid_argument("DE: generations must be >= 1");
    if (y_max < 1) throw std::invalid_argument("DE: y_max must be >= 1");
    if (r < 2) throw std::invalid_argument("DE: r must be >= 2");
    if (n_v < 1) throw std::invalid_argument("DE: n_v must be >= 1");
    int max_dopant = 2 + code.column_weight_histogram().rbegin()->first;
    if (l <= max_dopant) {
        throw std::invalid_argument("DE: l must exceed the largest doped degree " +
                                    std::to_string(max_dopant));
    }
}

namespace {

// Genome layout: coefficients for the dopant degrees (2+w for each component
// column weight w, ascending) followed by lambda_l; lambda_2 = 1 - sum.
struct DeSpace {
    std::vector<int> degs;       // genome degrees
    std::vector<double> lb_coef; // degree floors: lb_d = coef * y_max * Sigma / n_v
    int n_v;
    double R;
    int r;
    int y_max;
    double nc_margin;            // n_v (1-R) - 1 - y_max (mu-kappa)

    explicit DeSpace(const DeConfig& cfg) {
        n_v = cfg.n_v;
        R = rational_to_double(cfg.R);
        r = cfg.r;
        y_max = cfg.y_max;
        for (auto [w, cnt] : cfg.code.column_weight_histogram()) {
            degs.push_back(2 + w);
            lb_coef.push_back(static_cast<double>((2 + w) * cnt));
        }
        degs.push_back(cfg.l);
        lb_coef.push_back(0.0);
        nc_margin = n_v * (1.0 - R) - 1.0 - static_cast<double>(y_max) * cfg.code.m();
    }

    double sigma(double l2, const std::vector<double>& g) const {
        double s = l2 / 2.0;
        for (size_t k = 0; k < g.size(); ++k) s += g[k] / degs[k];
        return s;
    }
    double lambda2(const std::vector<double>& g) const {
        double s = 0.0;
        for (double v : g) s += v;
        return 1.0 - s;
    }

    void repair(std::vector<double>& g) const {
        for (double& v : g) v = std::max(0.0, v);
        const double inv_l = 1.0 / degs.back();
        for (int round = 0; round < 80; ++round) {
            double s = 0.0;
            for (double v : g) s += v;
            if (s > 1.0) {
                for (double& v : g) v /= s;
            }
            double l2 = lambda2(g);
            double sig = sigma(l2, g);
            for (size_t k = 0; k < g.size(); ++k) {
                g[k] = std::max(g[k], lb_coef[k] * y_max * sig / n_v);
            }
            l2 = lambda2(g);
            if (l2 < 0.0) {
                s = 1.0 - l2;
                for (double& v : g) v /= s;
                l2 = 0.0;
            }
            sig = sigma(l2, g);
            double l2max = 2.0 * sig * nc_margin / n_v;
            if (l2 > l2max) g.back() += l2 - l2max;
            l2 = lambda2(g);
            sig = sigma(l2, g);
            const double smin = 1.0 / (r * (1.0 - R));
            const double smax = 1.0 / ((r - 1) * (1.0 - R));
            if (sig > smax) {
                double need = (sig - smax) / (0.5 - inv_l);
                g.back() += std::min(need, std::max(0.0, l2));
            } else if (sig < smin) {
                double need = (smin - sig) / (0.5 - inv_l);
                g.back() -= std::min(need, g.back());
            }
        }
    }

    double violation(const std::vector<double>& g) const {
        double l2 = lambda2(g);
        double sig = sigma(l2, g);
        double v = std::max(0.0, -l2);
        for (size_t k = 0; k < g.size(); ++k) {
            v += std::max(0.0, lb_coef[k] * y_max * sig / n_v - g[k]);
            v += std::max(0.0, -g[k]);
        }
        v += std::max(0.0, l2 - 2.0 * sig * nc_margin / n_v);
        const double smin = 1.0 / (r * (1.0 - R));
        const double smax = 1.0 / ((r - 1) * (1.0 - R));
        v += std::max(0.0, sig - smax) + std::max(0.0, smin - sig);
        return v;
    }

    EnsembleDistribution to_ensemble(const std::vector<double>& g) const {
        EnsembleDistribution E;
        double l2 = lambda2(g);
        if (l2 > 0.0) E.lambda[2] = l2;
        for (size_t k = 0; k < g.size(); ++k) {
            if (g[k] > 0.0) E.lambda[degs[k]] = g[k];
        }
        double T = (1.0 - R) * sigma(l2, g);
        double rho_lo = (r - 1) * (r * T - 1.0);
        E.rho[r - 1] = rho_lo;
        E.rho[r] = 1.0 - rho_lo;
        return E;
    }
};

}  // namespace

double ensemble_constraint_violation(const EnsembleDistribution& E, const DeConfig& cfg) {
    DeSpace space(cfg);
    std::vector<double> g(space.degs.size(), 0.0);
    for (size_t k = 0; k < space.degs.size(); ++k) {
        auto it = E.lambda.find(space.degs[k]);
        if (it != E.lambda.end()) g[k] = it->second;
    }
    // Degrees outside the supported set are a violation in full.
    double extra = 0.0;
    for (auto [d, c] : E.lambda) {
        if (d != 2 && std::find(space.degs.begin(), space.degs.end(), d) == space.degs.end()) {
            extra += c;
        }
    }
    return space.violation(g) + extra;
}

DeResult optimize_ensemble(const DeConfig& cfg) {
    cfg.validate();
    DeSpace space(cfg);
    const size_t dim = space.degs.size();
    Rng rng = substream(cfg.rng_seed, "de");

    auto fitness = [&](const std::vector<double>& g) {
        double v = space.violation(g);
        if (v > 1e-9) return -v;
        return de_threshold(space.to_ensemble(g), cfg.threshold_tol);
    };

    std::vector<std::vector<double>> pop;
    std::vector<double> fit;
    bool any_feasible = false;
    for (int attempt = 0; attempt < 40 * cfg.population && static_cast<int>(pop.size()) < cfg.population;
         ++attempt) {
        std::vector<double> g(dim);
        for (double& v : g) v = 0.5 * rng.unit();
        space.repair(g);
        double f = fitness(g);
        any_feasible = any_feasible || f >= 0.0;
        pop.push_back(std::move(g));
        fit.push_back(f);
    }
    if (!any_feasible) {
        throw std::domain_error("DE: no feasible individual found during initialization");
    }

    DeResult res;
    std::vector<double> trial(dim);
    for (int gen = 0; gen < cfg.generations; ++gen) {
        for (int i = 0; i < cfg.population; ++i) {
            int a, b, c;
            do { a = static_cast<int>(rng.bounded(cfg.population)); } while (a == i);
            do { b = static_cast<int>(rng.bounded(cfg.population)); } while (b == i || b == a);
            do { c = static_cast<int>(rng.bounded(cfg.population)); } while (c == i || c == a || c == b);
            size_t jr = rng.bounded(dim);
            for (size_t k = 0; k < dim; ++k) {
                double mutant = pop[a][k] + cfg.F * (pop[b][k] - pop[c][k]);
                trial[k] = (rng.unit() < cfg.CR || k == jr) ? mutant : pop[i][k];
            }
            space.repair(trial);
            double tf = fitness(trial);
            if (tf >= fit[i]) {
                pop[i] = trial;
                fit[i] = tf;
            }
        }
        res.best_history.push_back(*std::max_element(fit.begin(), fit.end()));
    }

    size_t best = std::max_element(fit.begin(), fit.end()) - fit.begin();
    res.fitness = fit[best];
    res.constraint_violation = space.violation(pop[best]);
    res.ensemble = space.to_ensemble(pop[best]);
    if (res.fitness < 0.0) {
        throw std::domain_error("DE: search ended with no feasible individual");
    }
    return res;
}

DegreeCountVector counts_from_ensemble(const EnsembleDistribution& E, int n_v) {
    if (E.lambda.empty() || n_v < 1) throw std::invalid_argument("counts_from_ensemble: bad input");
    double sigma = E.lambda_integral();
    DegreeCountVector out;
    long total = 0;
    for (auto [d, c] : E.lambda) {
        int cnt = static_cast<int>(std::floor(n_v * (c / d) / sigma));
        out.pairs.push_back({d, cnt});
        total += cnt;
    }
    long shortfall = n_v - total;
    if (shortfall < 0) throw std::logic_error("counts_from_ensemble: floor overshoot");
    for (size_t k = 0; shortfall > 0; k = (k + 1) % out.pairs.size(), --shortfall) {
        out.pairs[k].second += 1;
    }
    std::erase_if(out.pairs, [](const auto& p) { return p.second == 0; });
    out.validate();
    if (out.total_nodes() != n_v) throw std::logic_error("counts_from_ensemble: count mismatch");
    return out;
}

SweepResult realize_and_sweep(const EnsembleDistribution& E, const DeConfig& cfg) {
    cfg.validate();
    const int mu = cfg.code.mu, m = cfg.code.m();
    const int nc0 = exact_int(Rational(cfg.n_v) * (Rational(1) - cfg.R), "n_v (1-R)");
    const auto hist = cfg.code.column_weight_histogram();

    SweepResult res;
    res.gc_counts = counts_from_ensemble(E, cfg.n_v);

    PegConfig gc_peg;
    gc_peg.n_c = nc0;
    gc_peg.n_v = cfg.n_v;
    gc_peg.target_degrees = res.gc_counts;
    gc_peg.rng_seed = substream(cfg.rng_seed, "gc-peg").next();
    res.g_c = peg_build(gc_peg);
    res.gc_threshold = threshold(make_ldpc_problem(res.g_c), cfg.threshold_tol).epsilon_star;

    // Inverse transform: G_p(y) returns mu*y doped nodes to degree 2 and
    // removes the dopant-degree nodes they would become.
    auto gp_counts_for = [&](int y) -> std::optional<DegreeCountVector> {
        std::map<int, int> counts;
        for (auto [d, c] : res.gc_counts.pairs) counts[d] = c;
        counts[2] += mu * y;
        for (auto [w, cnt] : hist) {
            counts[2 + w] -= y * cnt;
            if (counts[2 + w] < 0) return std::nullopt;
        }
        DegreeCountVector out;
        for (auto [d, c] : counts) {
            if (c > 0) out.pairs.push_back({d, c});
        }
        return out;
    };

    double best = -1.0;
    for (int y = 1; y <= cfg.y_max; ++y) {
        auto gp_counts = gp_counts_for(y);
        if (!gp_counts) break;  // dopant-degree counts exhausted
        const int n_c = nc0 - m * y;
        if (n_c < 1) break;
        // Sanity: doping the realized G_p must reproduce the G_c counts.
        if (!(degree_transform(*gp_counts, cfg.code, y) == res.gc_counts)) {
            throw std::logic_error("realize_and_sweep: degree transform identity broken");
        }
        PdProtographBuild built;
        try {
            built = build_doped_protograph(n_c, cfg.n_v, *gp_counts, y * mu, cfg.code,
                                           substream(cfg.rng_seed, "gp-peg", y).next(),
                                           cfg.max_retries);
        } catch (const std::domain_error&) {
            continue;
        }
        ThresholdResult thr = threshold(make_pd_problem(built.base, built.spec), cfg.threshold_tol);
        res.per_y.push_back({y, thr.epsilon_star, built.attempts});
        if (thr.epsilon_star > best) {
            best = thr.epsilon_star;
            res.y_opt = y;
            res.g_p = built.base;
            res.gp_counts = *gp_counts;
            res.spec = built.spec;
            res.thr = thr;
        }
    }
    if (res.per_y.empty()) {
        throw std::domain_error("realize_and_sweep: no feasible y produced an accepted protograph");
    }
    // The degree-2 ceiling implies the undoped degree-2 nodes fit in a forest.
    int undoped_deg2 = res.gp_counts.count_of(2) - mu * res.y_opt;
    if (undoped_deg2 > (nc0 - m * res.y_opt) - 1) {
        throw std::logic_error("realize_and_sweep: degree-2 ceiling violated on realization");
    }
    return res;
}

}  // namespace gldpc
