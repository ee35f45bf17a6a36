#include "gldpc/bec_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "gldpc/component_code.hpp"
#include "gldpc/gf2.hpp"
#include "gldpc/rng.hpp"

namespace gldpc {

void SimConfig::validate() const {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon outside [0,1]");
    if (max_blocks < 1) throw std::invalid_argument("max_blocks < 1");
    if (target_errors < 1) throw std::invalid_argument("target_errors < 1");
    if (max_decoder_iters < 1) throw std::invalid_argument("max_decoder_iters < 1");
    if (workers < 1) throw std::invalid_argument("workers < 1");
}

namespace {

// Decoder state bound to one code and reused across blocks (one instance per
// worker thread). Peeling handles SPC rows only; rows owned by a GC block are
// resolved through ml_erase_decode on that block's mu columns.
struct Peeler {
    const PdGldpcCode* code = nullptr;
    std::vector<uint8_t> is_spc;
    std::vector<std::vector<int>> col_blocks;
    std::vector<uint8_t> zeros_mu;

    std::vector<uint8_t> erased;
    std::vector<int> row_erased;
    std::vector<int> blk_erased;
    std::vector<uint8_t> blk_dirty;
    std::vector<int> spc_queue;
    std::vector<int> ml_pos;

    void bind(const PdGldpcCode& c) {
        code = &c;
        is_spc.assign(c.pcm.rows, 1);
        col_blocks.assign(c.pcm.cols, {});
        for (const GcBlock& b : c.gc_blocks) {
            for (int r : b.rows) is_spc[r] = 0;
            for (int col : b.cols) col_blocks[col].push_back(b.id);
        }
        zeros_mu.assign(c.gc_blocks.empty() ? 0 : c.spec.code.mu, 0);
    }

    void resolve(int c) {
        erased[c] = 0;
        for (int r : code->pcm.col_rows[c]) {
            if (--row_erased[r] == 1 && is_spc[r]) spc_queue.push_back(r);
        }
        for (int b : col_blocks[c]) {
            --blk_erased[b];
            blk_dirty[b] = 1;
        }
    }

    DecodeOutcome run(const std::vector<uint8_t>& era, int max_iters) {
        const LiftedPcm& H = code->pcm;
        erased = era;
        row_erased.assign(H.rows, 0);
        for (int c = 0; c < H.cols; ++c)
            if (erased[c])
                for (int r : H.col_rows[c]) ++row_erased[r];

        blk_erased.assign(code->gc_blocks.size(), 0);
        blk_dirty.assign(code->gc_blocks.size(), 0);
        for (const GcBlock& b : code->gc_blocks) {
            int cnt = 0;
            for (int col : b.cols) cnt += erased[col];
            blk_erased[b.id] = cnt;
            blk_dirty[b.id] = cnt > 0;
        }

        spc_queue.clear();
        for (int r = 0; r < H.rows; ++r)
            if (is_spc[r] && row_erased[r] == 1) spc_queue.push_back(r);

        DecodeOutcome out;
        for (int round = 0; round < max_iters; ++round) {
            bool progress = false;
            // Peel: each SPC row with a single erased neighbor determines it.
            while (!spc_queue.empty()) {
                int r = spc_queue.back();
                spc_queue.pop_back();
                if (row_erased[r] != 1) continue;
                for (int c : H.row_cols[r]) {
                    if (erased[c]) {
                        resolve(c);
                        progress = true;
                        break;
                    }
                }
            }
            // GC blocks whose erased set changed since their last solve.
            for (const GcBlock& b : code->gc_blocks) {
                if (!blk_dirty[b.id]) continue;
                if (blk_erased[b.id] == 0) {
                    blk_dirty[b.id] = 0;
                    continue;
                }
                ml_pos.clear();
                for (int t = 0; t < (int)b.cols.size(); ++t)
                    if (erased[b.cols[t]]) ml_pos.push_back(t);
                MlEraseResult res = ml_erase_decode(code->spec.code, ml_pos, zeros_mu);
                for (const auto& [t, v] : res.resolved) {
                    (void)v;  // all-zero codeword
                    resolve(b.cols[t]);
                }
                blk_dirty[b.id] = 0;  // re-solving needs an external change
                progress |= !res.resolved.empty();
            }
            if (!progress) break;
            out.iters = round + 1;
        }

        out.residual = erased;
        out.success = std::find(erased.begin(), erased.end(), uint8_t(1)) == erased.end();
        return out;
    }
};

double wilson_bound(double phat, long long n, double z, int sign) {
    double zz = z * z;
    double denom = 1.0 + zz / n;
    double center = phat + zz / (2.0 * n);
    double half = z * std::sqrt(phat * (1.0 - phat) / n + zz / (4.0 * n * n));
    return (center + sign * half) / denom;
}

}  // namespace

DecodeOutcome decode_block(const PdGldpcCode& code, const std::vector<uint8_t>& erasures,
                           int max_iters) {
    if ((int)erasures.size() != code.pcm.cols)
        throw std::invalid_argument("erasure vector length != code length");
    if (max_iters < 1) throw std::invalid_argument("max_iters < 1");
    Peeler p;
    p.bind(code);
    return p.run(erasures, max_iters);
}

SimResult run_bler(const PdGldpcCode& code, const SimConfig& cfg) {
    cfg.validate();
    const int n = code.pcm.cols;
    // Blocks are consumed in fixed batches; the stop decision looks only at
    // cumulative counts after each batch, so any worker count gives the same
    // blocks_run and the same per-block outcomes.
    const long long kBatch = 256;

    SimResult out;
    long long sum_iters = 0;

    std::vector<uint8_t> err_flag(kBatch);
    std::vector<int> iters_buf(kBatch), resid_buf(kBatch);

    long long done = 0;
    while (done < cfg.max_blocks) {
        long long count = std::min(kBatch, cfg.max_blocks - done);
        int nw = (int)std::min<long long>(cfg.workers, count);

        auto job = [&](int w) {
            Peeler peeler;
            peeler.bind(code);
            std::vector<uint8_t> erasures(n);
            for (long long idx = w; idx < count; idx += nw) {
                Rng r = substream(cfg.rng_seed, "sim", (uint64_t)(done + idx));
                for (int c = 0; c < n; ++c) erasures[c] = r.unit() < cfg.epsilon ? 1 : 0;
                DecodeOutcome d = peeler.run(erasures, cfg.max_decoder_iters);
                err_flag[idx] = d.success ? 0 : 1;
                iters_buf[idx] = d.iters;
                resid_buf[idx] = (int)std::count(d.residual.begin(), d.residual.end(), uint8_t(1));
            }
        };
        if (nw == 1) {
            job(0);
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < nw; ++w) pool.emplace_back(job, w);
            for (auto& t : pool) t.join();
        }

        for (long long idx = 0; idx < count; ++idx) {
            out.block_errors += err_flag[idx];
            sum_iters += iters_buf[idx];
            ++out.residual_erasure_histogram[resid_buf[idx]];
        }
        done += count;
        if (out.block_errors >= cfg.target_errors) break;
    }

    out.blocks_run = done;
    out.bler = (double)out.block_errors / (double)done;
    out.mean_iters = (double)sum_iters / (double)done;
    const double z = 1.959964;
    // The Wilson endpoints are exactly 0/1 at empty/full error counts; compute
    // them directly there instead of through the cancellation-prone formula.
    out.ci_low = out.block_errors == 0 ? 0.0 : std::max(0.0, wilson_bound(out.bler, done, z, -1));
    out.ci_high = out.block_errors == done ? 1.0
                                           : std::min(1.0, wilson_bound(out.bler, done, z, +1));
    return out;
}

bool erasure_rank_oracle(const PdGldpcCode& code, const std::vector<uint8_t>& erasures) {
    if (code.pcm.cols > 4096)
        throw std::invalid_argument("erasure_rank_oracle supports at most 4096 columns");
    if ((int)erasures.size() != code.pcm.cols)
        throw std::invalid_argument("erasure vector length != code length");
    std::vector<int> cols;
    for (int c = 0; c < code.pcm.cols; ++c)
        if (erasures[c]) cols.push_back(c);
    if (cols.empty()) return true;
    Gf2Matrix sub(code.pcm.rows, (int)cols.size());
    for (int j = 0; j < (int)cols.size(); ++j)
        for (int r : code.pcm.col_rows[cols[j]]) sub.set(r, j, true);
    return sub.rank() == (int)cols.size();
}

}  // namespace gldpc
