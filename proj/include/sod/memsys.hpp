#pragma once

#include "sod/matcore.hpp"
#include "sod/systolic.hpp"

namespace sod {

// Global buffer capacity and its static partitioning between the weight,
// input, and psum regions, plus the external bus width.
struct BufferConfig {
    uint64_t capacity_bytes = 2ull << 20;  // 2 MB
    double weight_fraction = 0.4;
    double input_fraction = 0.4;
    double psum_fraction = 0.2;
    int dram_bus_bits_per_cycle = 1024;

    uint64_t weight_bits() const;
    uint64_t input_bits() const;
    uint64_t psum_bits() const;
};

void validate(const BufferConfig& buf);

// Matmul dims after lowering, with operand densities.
struct LayerShape {
    int64_t m = 0;
    int64_t k = 0;
    int64_t n = 0;
    double weight_density = 1.0;
    double input_density = 1.0;

    uint64_t macs() const { return uint64_t(m) * uint64_t(k) * uint64_t(n); }
    uint64_t dense_ops() const { return 2 * macs(); }
};

void validate(const LayerShape& layer);

// Convolution described in tensor terms; lower_conv_to_matmul applies the
// im2col mapping M = out_h*out_w, K = in_ch*k_h*k_w, N = out_ch.
struct ConvShape {
    int64_t in_channels = 0;
    int64_t out_channels = 0;
    int64_t in_h = 0;
    int64_t in_w = 0;
    int64_t kernel = 1;
    int64_t stride = 1;
    int64_t pad = 0;
    int64_t groups = 1;
};

LayerShape lower_conv_to_matmul(const ConvShape& conv, double weight_density,
                                double input_density);

struct OperandFormats {
    MatrixFormat weight = MatrixFormat::kDense;
    MatrixFormat input = MatrixFormat::kDense;
};

// On-chip block sizes in logical elements; each dim is a multiple of the
// array tile (or the padded layer dim when smaller).
struct TilingPlan {
    int64_t m_block = 0;
    int64_t k_block = 0;
    int64_t n_block = 0;
};

struct TrafficReport {
    uint64_t dram_read_bits = 0;
    uint64_t dram_write_bits = 0;
    uint64_t sram_read_bits = 0;
    uint64_t sram_write_bits = 0;
    uint64_t weight_passes = 0;
    uint64_t input_passes = 0;
};

// Stored footprint of an r x c block, CSC-encoded per array tile
// (pointer overhead counted per tile). The density overload rounds to
// the expected nonzero count.
uint64_t block_stored_bits(int64_t rows, int64_t cols, uint64_t nnz, MatrixFormat format,
                           const BitWidths& bw, const ArrayConfig& cfg);
uint64_t block_stored_bits(int64_t rows, int64_t cols, double density, MatrixFormat format,
                           const BitWidths& bw, const ArrayConfig& cfg);

// Greedy block growth, K then N then M, in array-tile multiples, each
// operand held within its buffer partition. Throws Infeasible when even a
// single array tile cannot be staged.
TilingPlan plan_tiles(const LayerShape& layer, const BufferConfig& buf,
                      OperandFormats formats, const BitWidths& bw, const ArrayConfig& cfg);

// M-blocks outer: weights are re-fetched once per M block, inputs stream
// exactly once, outputs are written once (psums accumulate on chip).
TrafficReport traffic(const LayerShape& layer, const TilingPlan& plan, OperandFormats formats,
                      const BitWidths& bw, const ArrayConfig& cfg);

uint64_t dram_cycles(const TrafficReport& report, int bus_bits_per_cycle);

// Whole-layer array occupancy with back-to-back tiles: the first preload,
// one streamed row per mapped (block, tile) row, one final drain. Weight
// loads for the next tile hide under the current stream.
uint64_t layer_compute_cycles(const LayerShape& layer, const TilingPlan& plan,
                              const ArrayConfig& cfg);

uint64_t total_runtime_cycles(uint64_t compute_cycles, const TrafficReport& report,
                              const BufferConfig& buf);

}  // namespace sod
