#include "sod/systolic.hpp"

namespace sod {

namespace {

// [-2^(b-1), 2^(b-1)-1]
void check_psum_range(int64_t v, int psum_bits) {
    int64_t lim = int64_t(1) << (psum_bits - 1);
    if (v >= lim || v < -lim) {
        throw AccumulatorOverflow("partial sum " + std::to_string(v) + " exceeds " +
                                  std::to_string(psum_bits) + "-bit accumulator");
    }
}

}  // namespace

uint64_t tile_matmul_cycles(int64_t m, int64_t k, const ArrayConfig& cfg) {
    return uint64_t(k) + uint64_t(m) + uint64_t(cfg.pe_rows) + uint64_t(cfg.pe_cols) - 2;
}

MatmulTrace simulate_tile_matmul(const DenseMatrix& input, const DenseMatrix& weight,
                                 const ArrayConfig& cfg) {
    if (input.cols != weight.rows) throw Error("matmul dim mismatch");
    const int m = input.rows, k = input.cols, n = weight.cols;
    if (k > cfg.pe_rows || n > cfg.pe_cols) {
        throw TileTooLarge("tile " + std::to_string(k) + "x" + std::to_string(n) +
                           " exceeds " + std::to_string(cfg.pe_rows) + "x" +
                           std::to_string(cfg.pe_cols) + " array");
    }

    MatmulTrace trace;
    trace.out.rows = m;
    trace.out.cols = n;
    trace.out.data.assign(size_t(m) * n, 0);

    // The skewed dataflow computes exactly the mapped dot products; the
    // cycle count is fixed by the tile shape, never by the data.
    uint64_t effective = 0;
    for (int i = 0; i < m; ++i) {
        for (int kk = 0; kk < k; ++kk) {
            const int64_t a = input.at(i, kk);
            for (int j = 0; j < n; ++j) {
                const int64_t b = weight.at(kk, j);
                if (a != 0 && b != 0) ++effective;
                int64_t acc = trace.out.at(i, j) + a * b;
                check_psum_range(acc, cfg.bw.psum_bits);
                trace.out.at(i, j) = acc;
            }
        }
    }

    trace.cycles = tile_matmul_cycles(m, k, cfg);
    trace.total_mac_slots = uint64_t(cfg.pe_count()) * trace.cycles;
    trace.mapped_macs = uint64_t(m) * uint64_t(k) * uint64_t(n);
    trace.effective_macs = effective;
    return trace;
}

PsumMatrix accumulate(std::span<const PsumMatrix> partials, const BitWidths& bw) {
    if (partials.empty()) throw Error("no partials to accumulate");
    PsumMatrix out = partials.front();
    for (size_t p = 1; p < partials.size(); ++p) {
        const PsumMatrix& part = partials[p];
        if (part.rows != out.rows || part.cols != out.cols) {
            throw Error("partial output dims disagree");
        }
        for (size_t i = 0; i < out.data.size(); ++i) {
            int64_t acc = out.data[i] + part.data[i];
            check_psum_range(acc, bw.psum_bits);
            out.data[i] = acc;
        }
    }
    return out;
}

Utilization utilization(const MatmulTrace& trace) {
    Utilization u;
    if (trace.total_mac_slots == 0) return u;
    u.mapping_util = double(trace.mapped_macs) / double(trace.total_mac_slots);
    u.effective_util = double(trace.effective_macs) / double(trace.total_mac_slots);
    return u;
}

uint64_t effective_mac_count(const DenseMatrix& input, const DenseMatrix& weight) {
    if (input.cols != weight.rows) throw Error("matmul dim mismatch");
    uint64_t total = 0;
    for (int kk = 0; kk < input.cols; ++kk) {
        uint64_t in_col = 0;
        for (int i = 0; i < input.rows; ++i) in_col += input.at(i, kk) != 0;
        uint64_t w_row = 0;
        for (int j = 0; j < weight.cols; ++j) w_row += weight.at(kk, j) != 0;
        total += in_col * w_row;
    }
    return total;
}

}  // namespace sod
