#pragma once

#include <span>

#include "sod/matcore.hpp"

namespace sod {

// Weight-stationary systolic array. K maps to PE rows, N to PE columns,
// M streams through. 4K PEs at 500 MHz by default.
struct ArrayConfig {
    int pe_rows = 64;
    int pe_cols = 64;
    double clock_hz = 5e8;
    BitWidths bw;

    int64_t pe_count() const { return int64_t(pe_rows) * pe_cols; }
};

// Accumulator-width output matrix.
struct PsumMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<int64_t> data;

    int64_t at(int r, int c) const { return data[size_t(r) * cols + c]; }
    int64_t& at(int r, int c) { return data[size_t(r) * cols + c]; }
    bool operator==(const PsumMatrix&) const = default;
};

struct MatmulTrace {
    PsumMatrix out;
    uint64_t cycles = 0;
    uint64_t total_mac_slots = 0;  // pe_count * cycles
    uint64_t mapped_macs = 0;      // M*K*N mapped operand positions
    uint64_t effective_macs = 0;   // positions where both operands are nonzero
};

struct Utilization {
    double mapping_util = 0.0;
    double effective_util = 0.0;
};

// Standalone tile cost: K_t cycles of weight preload, M_t streamed rows,
// then a full skewed drain of R + C - 2.
uint64_t tile_matmul_cycles(int64_t m, int64_t k, const ArrayConfig& cfg);

// Exact integer matmul of input (M x K) by weight (K x N) in psum_bits
// arithmetic. Throws TileTooLarge when the weight tile exceeds the array
// and AccumulatorOverflow when a partial sum leaves the psum range.
MatmulTrace simulate_tile_matmul(const DenseMatrix& input, const DenseMatrix& weight,
                                 const ArrayConfig& cfg);

// Elementwise sum of split-K partial outputs, order-independent.
PsumMatrix accumulate(std::span<const PsumMatrix> partials, const BitWidths& bw = {});

Utilization utilization(const MatmulTrace& trace);

// Same count as the trace's effective_macs, from per-k nonzero counts
// instead of the full triple loop.
uint64_t effective_mac_count(const DenseMatrix& input, const DenseMatrix& weight);

}  // namespace sod
