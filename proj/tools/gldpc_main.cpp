// Command-line front end: construct / check / threshold / optimize / sweep /
// simulate / replay. Every file-writing command records a manifest with
// FNV-1a digests of its inputs and outputs; replay re-runs the stored argv
// into a fresh directory and verifies the outputs byte-for-byte.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gldpc/base_matrix.hpp"
#include "gldpc/bec_sim.hpp"
#include "gldpc/component_code.hpp"
#include "gldpc/doping.hpp"
#include "gldpc/ensemble_opt.hpp"
#include "gldpc/lifting.hpp"
#include "gldpc/manifest.hpp"
#include "gldpc/pexit.hpp"
#include "gldpc/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gldpc;

namespace {

int dispatch(std::vector<std::string> args);  // forward (replay recurses)

Rational parse_rate(const std::string& s) {
    long long p = 0, q = 1;
    char slash = 0;
    std::istringstream in(s);
    if (!(in >> p)) throw std::invalid_argument("bad --rate: " + s);
    if (in >> slash) {
        if (slash != '/' || !(in >> q)) throw std::invalid_argument("bad --rate: " + s);
    }
    if (q <= 0 || p <= 0 || p >= q) throw std::invalid_argument("--rate must be in (0,1): " + s);
    return Rational(p, q);
}

// "a:b:step" (inclusive range) or comma-separated list.
std::vector<double> parse_eps(const std::string& s) {
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        double a, b, step;
        char c1, c2;
        std::istringstream in(s);
        if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
            throw std::invalid_argument("bad --eps range: " + s);
        for (double e = a; e <= b + 1e-12; e += step) out.push_back(e);
    } else {
        std::istringstream in(s);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            if (tok.empty()) continue;
            out.push_back(std::stod(tok));
        }
    }
    if (out.empty()) throw std::invalid_argument("empty --eps list");
    for (double e : out)
        if (!(e >= 0.0 && e <= 1.0)) throw std::invalid_argument("eps outside [0,1]");
    return out;
}

int default_workers() {
    if (const char* env = std::getenv("GLDPC_WORKERS")) {
        int w = std::atoi(env);
        if (w >= 1) return w;
    }
    return 1;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << text;
}

struct Emitter {
    RunManifest man;
    fs::path dir;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    Emitter(std::string command, const std::vector<std::string>& argv, uint64_t seed,
            const std::string& out_dir) {
        man.command = std::move(command);
        man.argv = argv;
        man.seed = seed;
        dir = out_dir;
        fs::create_directories(dir);
    }
    std::string path(const std::string& file) const { return (dir / file).string(); }
    void input(const std::string& p) { man.inputs[p] = file_digest(p); }
    void output(const std::string& p) { man.outputs[p] = file_digest(p); }
    void finish(const std::string& manifest_file) {
        man.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_manifest(man, path(manifest_file));
    }
};

json threshold_json(const ThresholdResult& t) {
    return json{{"epsilon_star", t.epsilon_star},
                {"iterations_at_threshold", t.iterations_at_threshold},
                {"converged", t.converged},
                {"bisection_width", t.bisection_width}};
}

json per_y_json(const std::vector<PerYResult>& per_y) {
    json arr = json::array();
    for (const auto& p : per_y)
        arr.push_back(json{{"y", p.y}, {"threshold", p.threshold}, {"peg_attempts", p.peg_attempts}});
    return arr;
}

// ---------------------------------------------------------------- construct
struct ConstructOpts {
    std::string mode, rate = "1/2", out_dir = ".", name = "code", base_path, ensemble_path;
    int nv = 400, m = 4, N = 0, wr = 2, y = -1, ymax = 5, l = 20, r = 9, gens = 300, pop = 50,
        check_idx = -1;
    uint64_t seed = 1;
    double tol = 1e-4;
};

int do_construct(const ConstructOpts& o, const std::vector<std::string>& argv) {
    ComponentCode comp = hamming(o.m);
    if (o.N < 1) throw std::invalid_argument("--N is required (lifting factor)");
    if (o.N % comp.mu != 0)
        throw std::invalid_argument("--N=" + std::to_string(o.N) +
                                    " is not a multiple of the component length mu=" +
                                    std::to_string(comp.mu));
    Rational R = parse_rate(o.rate);

    Emitter em("construct", argv, o.seed, o.out_dir);
    em.man.params = json{{"mode", o.mode}, {"rate", o.rate},   {"nv", o.nv},   {"m", o.m},
                         {"N", o.N},       {"seed", o.seed},   {"wr", o.wr},   {"y", o.y},
                         {"ymax", o.ymax}, {"l", o.l},         {"r", o.r},     {"gens", o.gens},
                         {"pop", o.pop},   {"check_idx", o.check_idx}};
    json report;
    report["mode"] = o.mode;

    BaseMatrix base;
    PdGldpcCode code;
    if (o.mode == "conventional") {
        if (o.base_path.empty())
            throw std::invalid_argument("--base is required in conventional mode");
        if (o.check_idx < 0)
            throw std::invalid_argument("--check-idx is required in conventional mode");
        em.input(o.base_path);
        base = base_matrix_from_json(read_text(o.base_path));
        LiftedPcm lifted = lift(base, o.N, comp.mu, o.seed);
        code = dope_conventional(base, o.check_idx, comp, lifted);
        report["check_idx"] = o.check_idx;
    } else if (o.mode == "regular") {
        Rational nc0R = Rational(o.nv) * (Rational(1) - R);
        if (nc0R.denominator() != 1)
            throw std::domain_error("n_v(1-R) is not an integer check count");
        int nc0 = (int)nc0R.numerator();
        DopingSpec spec;
        int y_used;
        if (o.y >= 0) {
            int n_c = nc0 - comp.m() * o.y;
            if (n_c < 1) throw std::domain_error("y leaves no SPC checks");
            DegreeCountVector degs;
            degs.pairs = {{o.wr, o.nv}};
            PdProtographBuild b =
                build_doped_protograph(n_c, o.nv, degs, o.y * comp.mu, comp,
                                       substream(o.seed, "regular-y", (uint64_t)o.y).next());
            base = b.base;
            spec = b.spec;
            y_used = o.y;
        } else {
            RegularDesign d;
            d.w_r = o.wr;
            d.code = comp;
            d.n_v = o.nv;
            d.R = R;
            d.rng_seed = o.seed;
            d.threshold_tol = o.tol;
            RegularResult rr = construct_regular(d);
            base = rr.base;
            spec = rr.spec;
            y_used = rr.y_best;
            report["threshold"] = threshold_json(rr.thr);
            report["per_y"] = per_y_json(rr.per_y);
            report["y_range"] = json::array({rr.y_range.first, rr.y_range.second});
        }
        report["y"] = y_used;
        DminWitness w = typical_dmin_check(base, spec);
        report["typical_dmin_ok"] = w.ok;
        LiftedPcm lifted = lift(base, o.N, comp.mu, o.seed);
        code = dope_partial(base, lifted, spec);
    } else {  // irregular
        EnsembleDistribution E;
        DeConfig cfg;
        cfg.population = o.pop;
        cfg.generations = o.gens;
        cfg.rng_seed = o.seed;
        cfg.y_max = o.ymax;
        cfg.l = o.l;
        cfg.r = o.r;
        cfg.n_v = o.nv;
        cfg.R = R;
        cfg.code = comp;
        cfg.threshold_tol = o.tol;
        if (!o.ensemble_path.empty()) {
            em.input(o.ensemble_path);
            E = ensemble_from_json(read_text(o.ensemble_path));
        } else {
            DeResult de = optimize_ensemble(cfg);
            E = de.ensemble;
            report["de_fitness"] = de.fitness;
            report["constraint_violation"] = de.constraint_violation;
        }
        SweepResult sw = realize_and_sweep(E, cfg);
        base = sw.g_p;
        report["y"] = sw.y_opt;
        report["gc_threshold"] = sw.gc_threshold;
        report["threshold"] = threshold_json(sw.thr);
        report["per_y"] = per_y_json(sw.per_y);
        report["ensemble"] = json::parse(to_json(E));
        DminWitness w = typical_dmin_check(base, sw.spec);
        report["typical_dmin_ok"] = w.ok;
        LiftedPcm lifted = lift(base, o.N, comp.mu, o.seed);
        code = dope_partial(base, lifted, sw.spec);
    }

    report["n"] = code.n();
    report["rows"] = code.pcm.rows;
    {
        Rational rr = code.rate();
        report["rate"] = json::array({rr.numerator(), rr.denominator()});
    }
    report["four_cycles"] = count_4cycles(code.pcm);

    std::string base_p = em.path(o.name + ".base.json");
    std::string alist_p = em.path(o.name + ".alist");
    std::string side_p = em.path(o.name + ".code.json");
    std::string bin_p = em.path(o.name + ".pcm.bin");
    std::string rep_p = em.path(o.name + ".report.json");
    write_text(base_p, to_json(base));
    save_code(code, alist_p, side_p);
    write_pcm_binary(code.pcm, bin_p);
    write_text(rep_p, report.dump(2) + "\n");
    for (const auto& p : {base_p, alist_p, side_p, bin_p, rep_p}) em.output(p);
    em.finish(o.name + ".manifest.json");
    std::cout << report.dump(2) << "\n";
    return 0;
}

// -------------------------------------------------------------------- check
int do_check(const std::string& code_prefix) {
    PdGldpcCode code = load_code(code_prefix + ".alist", code_prefix + ".code.json");
    DminWitness w = typical_dmin_check(code.base, code.spec);
    json rep{{"n", code.n()},
             {"rows", code.pcm.rows},
             {"x", code.x()},
             {"y", code.spec.y},
             {"gc_blocks", code.gc_blocks.size()},
             {"component", {{"mu", code.spec.code.mu}, {"kappa", code.spec.code.kappa}}},
             {"typical_dmin_ok", w.ok},
             {"four_cycles", count_4cycles(code.pcm)}};
    Rational r = code.rate();
    rep["rate"] = json::array({r.numerator(), r.denominator()});
    if (!w.ok) rep["cycle_witness"] = w.cycle_vns;
    std::cout << rep.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------- threshold
int do_threshold(const std::string& code_prefix, std::string mode, double tol,
                 const std::string& out_dir, const std::string& name,
                 const std::vector<std::string>& argv) {
    if (tol <= 0) throw std::invalid_argument("--tol must be positive");
    Emitter em("threshold", argv, 0, out_dir);
    std::string alist_p = code_prefix + ".alist", side_p = code_prefix + ".code.json";
    em.input(alist_p);
    em.input(side_p);
    PdGldpcCode code = load_code(alist_p, side_p);
    if (mode == "auto")
        mode = code.conventional_check >= 0 ? "conventional" : (code.x() > 0 ? "pd" : "ldpc");
    PexitProblem prob;
    if (mode == "ldpc") {
        prob = make_ldpc_problem(code.base);
    } else if (mode == "pd") {
        prob = make_pd_problem(code.base, code.spec);
    } else if (mode == "conventional") {
        if (code.conventional_check < 0)
            throw std::invalid_argument("code has no conventionally doped check");
        prob = make_conventional_problem(code.base, code.conventional_check, code.spec.code);
    } else {
        throw std::invalid_argument("--mode must be pd | conventional | ldpc");
    }
    ThresholdResult tr = threshold(prob, tol);
    json rep = threshold_json(tr);
    rep["mode"] = mode;
    rep["tol"] = tol;
    em.man.params = json{{"code", code_prefix}, {"mode", mode}, {"tol", tol}};
    std::string rep_p = em.path(name + ".threshold.json");
    write_text(rep_p, rep.dump(2) + "\n");
    em.output(rep_p);
    em.finish(name + ".threshold.manifest.json");
    std::cout << rep.dump(2) << "\n";
    return 0;
}

// ----------------------------------------------------------------- optimize
int do_optimize(const DeConfig& cfg, const std::string& rate, const std::string& out_dir,
                const std::string& name, const std::vector<std::string>& argv) {
    Emitter em("optimize", argv, cfg.rng_seed, out_dir);
    em.man.params = json{{"ymax", cfg.y_max},      {"l", cfg.l},
                         {"r", cfg.r},             {"nv", cfg.n_v},
                         {"rate", rate},           {"gens", cfg.generations},
                         {"pop", cfg.population},  {"seed", cfg.rng_seed},
                         {"m", cfg.code.mu == 0 ? 0 : cfg.code.m()}};
    DeResult de = optimize_ensemble(cfg);
    std::string ens_p = em.path(name + ".ensemble.json");
    std::string hist_p = em.path(name + ".history.csv");
    write_text(ens_p, to_json(de.ensemble));
    std::ostringstream csv;
    csv << "generation,best_threshold\n";
    for (size_t g = 0; g < de.best_history.size(); ++g) {
        char row[64];
        std::snprintf(row, sizeof row, "%zu,%.10g\n", g, de.best_history[g]);
        csv << row;
    }
    write_text(hist_p, csv.str());
    em.output(ens_p);
    em.output(hist_p);
    em.finish(name + ".optimize.manifest.json");
    json rep{{"threshold", de.fitness},
             {"constraint_violation", de.constraint_violation},
             {"generations", de.best_history.size()}};
    std::cout << rep.dump(2) << "\n";
    return 0;
}

// -------------------------------------------------------------------- sweep
int do_sweep(const std::string& ensemble_path, DeConfig cfg, const std::string& out_dir,
             const std::string& name, const std::vector<std::string>& argv) {
    Emitter em("sweep", argv, cfg.rng_seed, out_dir);
    em.input(ensemble_path);
    EnsembleDistribution E = ensemble_from_json(read_text(ensemble_path));
    em.man.params = json{{"ensemble", ensemble_path}, {"ymax", cfg.y_max}, {"nv", cfg.n_v},
                         {"seed", cfg.rng_seed},      {"l", cfg.l},        {"r", cfg.r}};
    SweepResult sw = realize_and_sweep(E, cfg);
    json rep{{"y_opt", sw.y_opt},
             {"gc_threshold", sw.gc_threshold},
             {"threshold", threshold_json(sw.thr)},
             {"per_y", per_y_json(sw.per_y)},
             {"de_threshold", de_threshold(E, cfg.threshold_tol)}};
    json counts = json::array();
    for (auto [d, c] : sw.gc_counts.pairs) counts.push_back(json::array({d, c}));
    rep["gc_counts"] = counts;
    json gcounts = json::array();
    for (auto [d, c] : sw.gp_counts.pairs) gcounts.push_back(json::array({d, c}));
    rep["gp_counts"] = gcounts;
    std::string gp_p = em.path(name + ".gp.json");
    json gp{{"base", json::parse(to_json(sw.g_p))},
            {"doped_cols", sw.spec.doped_cols},
            {"y", sw.spec.y}};
    write_text(gp_p, gp.dump(2) + "\n");
    std::string rep_p = em.path(name + ".sweep.json");
    write_text(rep_p, rep.dump(2) + "\n");
    em.output(gp_p);
    em.output(rep_p);
    em.finish(name + ".sweep.manifest.json");
    std::cout << rep.dump(2) << "\n";
    return 0;
}

// ----------------------------------------------------------------- simulate
int do_simulate(const std::string& code_prefix, const std::string& eps_spec, double max_blocks,
                int target_errors, int workers, uint64_t seed, const std::string& out_dir,
                const std::string& name, const std::vector<std::string>& argv) {
    std::vector<double> eps = parse_eps(eps_spec);
    if (max_blocks < 1) throw std::invalid_argument("--max-blocks must be >= 1");
    if (target_errors < 1) throw std::invalid_argument("--target-errors must be >= 1");
    Emitter em("simulate", argv, seed, out_dir);
    std::string alist_p = code_prefix + ".alist", side_p = code_prefix + ".code.json";
    em.input(alist_p);
    em.input(side_p);
    PdGldpcCode code = load_code(alist_p, side_p);
    em.man.params = json{{"code", code_prefix},           {"eps", eps_spec},
                         {"max_blocks", max_blocks},      {"target_errors", target_errors},
                         {"workers", workers},            {"seed", seed}};
    std::ostringstream csv;
    csv << "eps,blocks,errors,bler,ci_low,ci_high,mean_iters\n";
    for (double e : eps) {
        SimConfig cfg;
        cfg.epsilon = e;
        cfg.max_blocks = (long long)std::llround(max_blocks);
        cfg.target_errors = target_errors;
        cfg.rng_seed = seed;
        cfg.workers = workers;
        SimResult r = run_bler(code, cfg);
        char row[256];
        std::snprintf(row, sizeof row, "%.10g,%lld,%lld,%.10g,%.10g,%.10g,%.10g\n", e,
                      r.blocks_run, r.block_errors, r.bler, r.ci_low, r.ci_high, r.mean_iters);
        csv << row;
        std::cerr << "eps " << e << ": bler " << r.bler << " (" << r.block_errors << "/"
                  << r.blocks_run << ")\n";
    }
    std::string csv_p = em.path(name + ".bler.csv");
    write_text(csv_p, csv.str());
    em.output(csv_p);
    em.finish(name + ".sim.manifest.json");
    std::cout << csv.str();
    return 0;
}

// ------------------------------------------------------------------- replay
int do_replay(const std::string& manifest_path, const std::string& out_dir) {
    RunManifest m = read_manifest(manifest_path);
    std::vector<std::string> argv2 = m.argv;
    bool rewritten = false;
    for (size_t i = 0; i < argv2.size(); ++i) {
        if (argv2[i] == "--out-dir" && i + 1 < argv2.size()) {
            argv2[i + 1] = out_dir;
            rewritten = true;
        } else if (argv2[i].rfind("--out-dir=", 0) == 0) {
            argv2[i] = "--out-dir=" + out_dir;
            rewritten = true;
        }
    }
    if (!rewritten) {
        argv2.push_back("--out-dir");
        argv2.push_back(out_dir);
    }
    int rc = dispatch(argv2);
    if (rc != 0) {
        std::cerr << "replay: inner command failed with exit code " << rc << "\n";
        return rc;
    }
    int mismatches = 0;
    for (const auto& [path, digest] : m.outputs) {
        fs::path fresh = fs::path(out_dir) / fs::path(path).filename();
        std::string got;
        try {
            got = file_digest(fresh.string());
        } catch (const std::exception&) {
            got = "<missing>";
        }
        if (got != digest) {
            std::cerr << "replay mismatch: " << fresh.string() << " " << got
                      << " != " << digest << "\n";
            ++mismatches;
        }
    }
    if (mismatches) return 4;
    std::cout << "replay verified " << m.outputs.size() << " outputs byte-identical\n";
    return 0;
}

int dispatch(std::vector<std::string> args) {
    CLI::App app{"protograph-based partially doped GLDPC code toolkit"};
    app.require_subcommand(1);

    ConstructOpts co;
    auto* construct = app.add_subcommand("construct", "build a code and write its artifacts");
    construct->add_option("--mode", co.mode, "regular | irregular | conventional")
        ->required()
        ->check(CLI::IsMember({"regular", "irregular", "conventional"}));
    construct->add_option("--rate", co.rate, "design rate, e.g. 1/2");
    construct->add_option("--nv", co.nv, "protograph variable nodes");
    construct->add_option("--component", co.m, "Hamming parameter m (mu = 2^m - 1)");
    construct->add_option("--N", co.N, "lifting factor (multiple of mu)");
    construct->add_option("--seed", co.seed, "root RNG seed");
    construct->add_option("--wr", co.wr, "regular mode: column weight");
    construct->add_option("--y", co.y, "regular mode: fixed bulk count (skips the sweep)");
    construct->add_option("--ymax", co.ymax, "irregular mode: doped bulk budget");
    construct->add_option("--l", co.l, "irregular mode: largest variable degree");
    construct->add_option("--r", co.r, "irregular mode: largest check degree");
    construct->add_option("--gens", co.gens, "irregular mode: DE generations");
    construct->add_option("--pop", co.pop, "irregular mode: DE population");
    construct->add_option("--ensemble", co.ensemble_path, "irregular mode: reuse an ensemble file");
    construct->add_option("--base", co.base_path, "conventional mode: protograph JSON");
    construct->add_option("--check-idx", co.check_idx, "conventional mode: check to replace");
    construct->add_option("--tol", co.tol, "threshold bisection tolerance");
    construct->add_option("--out-dir", co.out_dir, "output directory");
    construct->add_option("--name", co.name, "output file prefix");

    std::string ck_code;
    auto* check = app.add_subcommand("check", "validate a stored code and its distance condition");
    check->add_option("--code", ck_code, "artifact prefix (expects .alist/.code.json)")->required();

    std::string th_code, th_mode = "auto", th_dir = ".", th_name = "code";
    double th_tol = 1e-4;
    auto* thresh = app.add_subcommand("threshold", "asymptotic BEC threshold of a stored code");
    thresh->add_option("--code", th_code, "artifact prefix")->required();
    thresh->add_option("--mode", th_mode, "pd | conventional | ldpc (default: auto)");
    thresh->add_option("--tol", th_tol, "bisection tolerance");
    thresh->add_option("--out-dir", th_dir, "output directory");
    thresh->add_option("--name", th_name, "output file prefix");

    DeConfig oc;
    std::string op_rate = "1/2", op_dir = ".", op_name = "opt";
    int op_m = 4;
    auto* opt = app.add_subcommand("optimize", "differential-evolution ensemble search");
    opt->add_option("--ymax", oc.y_max, "doped bulk budget");
    opt->add_option("--l", oc.l, "largest variable degree");
    opt->add_option("--r", oc.r, "largest check degree");
    opt->add_option("--nv", oc.n_v, "protograph variable nodes");
    opt->add_option("--rate", op_rate, "design rate");
    opt->add_option("--component", op_m, "Hamming parameter m");
    opt->add_option("--gens", oc.generations, "generations");
    opt->add_option("--pop", oc.population, "population size");
    opt->add_option("--seed", oc.rng_seed, "root RNG seed");
    opt->add_option("--out-dir", op_dir, "output directory");
    opt->add_option("--name", op_name, "output file prefix");

    std::string sw_ens, sw_rate = "1/2", sw_dir = ".", sw_name = "sweep";
    DeConfig sc;
    int sw_m = 4;
    auto* sweep = app.add_subcommand("sweep", "realize an ensemble and sweep doped bulks");
    sweep->add_option("--ensemble", sw_ens, "ensemble JSON")->required();
    sweep->add_option("--ymax", sc.y_max, "doped bulk budget");
    sweep->add_option("--l", sc.l, "largest variable degree");
    sweep->add_option("--r", sc.r, "largest check degree");
    sweep->add_option("--nv", sc.n_v, "protograph variable nodes");
    sweep->add_option("--rate", sw_rate, "design rate");
    sweep->add_option("--component", sw_m, "Hamming parameter m");
    sweep->add_option("--seed", sc.rng_seed, "root RNG seed");
    sweep->add_option("--tol", sc.threshold_tol, "threshold bisection tolerance");
    sweep->add_option("--out-dir", sw_dir, "output directory");
    sweep->add_option("--name", sw_name, "output file prefix");

    std::string sm_code, sm_eps, sm_dir = ".", sm_name = "sim";
    double sm_max_blocks = 1e6;
    int sm_target = 100, sm_workers = default_workers();
    uint64_t sm_seed = 1;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo BLER over an epsilon grid");
    sim->add_option("--code", sm_code, "artifact prefix")->required();
    sim->add_option("--eps", sm_eps, "start:end:step or comma list")->required();
    sim->add_option("--max-blocks", sm_max_blocks, "cap per point (accepts 1e6)");
    sim->add_option("--target-errors", sm_target, "stop after this many block errors");
    sim->add_option("--workers", sm_workers, "worker threads (env GLDPC_WORKERS)");
    sim->add_option("--seed", sm_seed, "root RNG seed");
    sim->add_option("--out-dir", sm_dir, "output directory");
    sim->add_option("--name", sm_name, "output file prefix");

    std::string rp_manifest, rp_dir;
    auto* replay = app.add_subcommand("replay", "re-run a manifest and verify outputs");
    replay->add_option("--manifest", rp_manifest, "manifest JSON")->required();
    replay->add_option("--out-dir", rp_dir, "fresh output directory")->required();

    try {
        std::vector<const char*> cargv;
        for (const auto& s : args) cargv.push_back(s.c_str());
        app.parse((int)cargv.size(), cargv.data());

        if (construct->parsed()) return do_construct(co, args);
        if (check->parsed()) return do_check(ck_code);
        if (thresh->parsed()) return do_threshold(th_code, th_mode, th_tol, th_dir, th_name, args);
        if (opt->parsed()) {
            oc.R = parse_rate(op_rate);
            oc.code = hamming(op_m);
            return do_optimize(oc, op_rate, op_dir, op_name, args);
        }
        if (sweep->parsed()) {
            sc.R = parse_rate(sw_rate);
            sc.code = hamming(sw_m);
            return do_sweep(sw_ens, sc, sw_dir, sw_name, args);
        }
        if (sim->parsed())
            return do_simulate(sm_code, sm_eps, sm_max_blocks, sm_target, sm_workers, sm_seed,
                               sm_dir, sm_name, args);
        if (replay->parsed()) return do_replay(rp_manifest, rp_dir);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "infeasible design: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace

int main(int argc, char** argv) {
    return dispatch(std::vector<std::string>(argv, argv + argc));
}
