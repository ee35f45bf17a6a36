#pragma once
#include <vector>

#include "gldpc/base_matrix.hpp"
#include "gldpc/component_code.hpp"
#include "gldpc/doping.hpp"

namespace gldpc {

enum class PexitMode { ldpc, conventional, pd };

struct PexitConfig {
    double delta_conv = 1e-9;   // success: every I_APP >= 1 - delta_conv
    int max_iters = 10000;
    double stall_tol = 1e-12;   // fail early once messages stop moving
    // Optional test hook: receives the per-edge check-to-variable messages at
    // exit (used to verify that pd mode with no doped columns degenerates to
    // the plain LDPC recursion bit-for-bit).
    std::vector<double>* final_messages = nullptr;
};

// Protograph-level description of one PEXIT instance. Parallel edges are
// expanded into distinct edges with independent messages.
struct PexitProblem {
    BaseMatrix base;
    PexitMode mode = PexitMode::ldpc;
    std::vector<int> doped_cols;  // pd mode: VNs with a virtual GC neighbor
    std::vector<int> gc_checks;   // conventional mode: replaced check rows
    ExitOraclePoly exit;          // GC EXIT polynomial (enumeration-validated)
};

PexitProblem make_ldpc_problem(const BaseMatrix& base);
PexitProblem make_pd_problem(const BaseMatrix& base, const DopingSpec& spec);
PexitProblem make_conventional_problem(const BaseMatrix& base, int check_idx,
                                       const ComponentCode& code);

struct PexitOutcome {
    bool success = false;
    int iterations = 0;
};

// One density-evolution run at fixed erasure probability. Per iteration:
// variable-to-check I_EV(i,j) = 1 - eps * prod_{t != i}(1 - I_AV(t,j)), with
// an extra (1 - I_EGC) factor on doped columns; check-to-variable is the SPC
// exclusion product, except GC checks broadcast the EXIT function of the mean
// incoming I_EV; the PD virtual node feeds back through the EXIT polynomial
// of 1 - eps * prod over ALL edges. Success once every APP value reaches
// 1 - delta_conv. Throws std::runtime_error on non-finite intermediates.
PexitOutcome pexit_evaluate(const PexitProblem& problem, double epsilon,
                            const PexitConfig& cfg = {});

struct ThresholdResult {
    double epsilon_star = 0.0;
    int iterations_at_threshold = 0;  // iterations of the last passing run
    bool converged = false;           // at least one epsilon succeeded
    double bisection_width = 0.0;
};

// Bisection of pexit_evaluate over [0, 1]; reports the midpoint of the final
// bracket.
ThresholdResult threshold(const PexitProblem& problem, double tol = 1e-4,
                          const PexitConfig& cfg = {});

// Random-ensemble density-evolution threshold: sup eps with
// eps * lambda(1 - rho(1 - x)) < x on (0, 1], by bisection over a fixed-point
// inner loop.
double de_threshold(const EnsembleDistribution& E, double tol = 1e-4);

}  // namespace gldpc
