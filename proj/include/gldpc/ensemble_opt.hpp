#pragma once
#include <cstdint>
#include <utility>
#include <vector>

#include "gldpc/base_matrix.hpp"
#include "gldpc/component_code.hpp"
#include "gldpc/doping.hpp"
#include "gldpc/pexit.hpp"

namespace gldpc {

// PEG-build an n_c x n_v protograph with the given column-degree counts,
// dope the leftmost x columns, and redraw until the undoped degree-2
// variable nodes are acyclic. Throws std::domain_error when max_retries
// consecutive draws fail.
struct PdProtographBuild {
    BaseMatrix base;
    DopingSpec spec;
    int attempts = 0;
};
PdProtographBuild build_doped_protograph(int n_c, int n_v, const DegreeCountVector& degrees,
                                         int x, const ComponentCode& code, uint64_t rng_seed,
                                         int max_retries = 500);

struct PerYResult {
    int y = 0;
    double threshold = 0.0;
    int peg_attempts = 0;
};

// Regular pipeline: w_r-regular protographs of shrinking check count
// n_c(y) = n_v(1-R) - (mu-kappa) y, doped on the leftmost y*mu columns,
// swept over every feasible y.
struct RegularDesign {
    int w_r = 2;
    ComponentCode code;
    int n_v = 400;
    Rational R{1, 2};
    uint64_t rng_seed = 1;
    int max_retries = 500;
    double threshold_tol = 1e-4;
};

struct RegularResult {
    int y_best = 0;
    BaseMatrix base;        // accepted protograph at y_best
    DopingSpec spec;        // its doping (leftmost y_best * mu columns)
    ThresholdResult thr;
    std::vector<PerYResult> per_y;
    std::pair<int, int> y_range;  // inclusive
};

RegularResult construct_regular(const RegularDesign& d);

// Differential-evolution search over variable-node distributions with
// support {2, dopant degrees, l} and check support {r-1, r}. lambda_2 is
// derived (1 - sum of the genome); rho follows from the rate constraint.
struct DeConfig {
    int population = 50;
    double F = 0.5;
    double CR = 0.9;
    int generations = 300;
    uint64_t rng_seed = 1;
    int y_max = 5;
    int l = 20;  // largest variable degree
    int r = 9;   // largest check degree
    int n_v = 400;
    Rational R{1, 2};
    ComponentCode code;
    int max_retries = 500;
    double threshold_tol = 1e-4;

    void validate() const;
};

struct DeResult {
    EnsembleDistribution ensemble;
    double fitness = 0.0;           // de_threshold of the best individual
    double constraint_violation = 0.0;
    std::vector<double> best_history;  // best fitness per generation
};

DeResult optimize_ensemble(const DeConfig& cfg);

// Exact feasibility report for a candidate ensemble under cfg's constraints:
// rate (via the rho construction band), the degree-2 ceiling, and the
// per-degree floors needed so a G_p realization exists for y_max bulks.
double ensemble_constraint_violation(const EnsembleDistribution& E, const DeConfig& cfg);

// Integer column counts from an ensemble: floor(n_v * (lambda_d / d) / Sigma)
// per degree, with the shortfall distributed +1 per degree from the lowest up.
DegreeCountVector counts_from_ensemble(const EnsembleDistribution& E, int n_v);

// Ensemble realization: build G_c from the counts, then for each y build the
// inverse-transformed G_p, dope, verify the distance condition, and measure
// the PD threshold; pick the best y.
struct SweepResult {
    int y_opt = 0;
    BaseMatrix g_c;
    double gc_threshold = 0.0;       // G_c as a plain LDPC protograph
    DegreeCountVector gc_counts;
    BaseMatrix g_p;                  // accepted G_p at y_opt
    DegreeCountVector gp_counts;     // counts of g_p
    DopingSpec spec;                 // doping of g_p
    ThresholdResult thr;             // PD threshold at y_opt
    std::vector<PerYResult> per_y;
};

SweepResult realize_and_sweep(const EnsembleDistribution& E, const DeConfig& cfg);

}  // namespace gldpc
