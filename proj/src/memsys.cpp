#include "sod/memsys.hpp"

#include <algorithm>
#include <cmath>

namespace sod {

namespace {

uint64_t ceil_div(uint64_t a, uint64_t b) { return (a + b - 1) / b; }

}  // namespace

uint64_t BufferConfig::weight_bits() const {
    return uint64_t(double(capacity_bytes) * 8.0 * weight_fraction);
}
uint64_t BufferConfig::input_bits() const {
    return uint64_t(double(capacity_bytes) * 8.0 * input_fraction);
}
uint64_t BufferConfig::psum_bits() const {
    return uint64_t(double(capacity_bytes) * 8.0 * psum_fraction);
}

void validate(const BufferConfig& buf) {
    if (buf.capacity_bytes == 0) throw Error("buffer capacity must be positive");
    if (buf.weight_fraction <= 0 || buf.input_fraction <= 0 || buf.psum_fraction <= 0) {
        throw Error("buffer split fractions must be positive");
    }
    double sum = buf.weight_fraction + buf.input_fraction + buf.psum_fraction;
    if (std::abs(sum - 1.0) > 1e-9) throw Error("buffer split fractions must sum to 1");
    if (buf.dram_bus_bits_per_cycle <= 0) throw Error("bus width must be positive");
}

void validate(const LayerShape& layer) {
    if (layer.m <= 0 || layer.k <= 0 || layer.n <= 0) throw Error("layer dims must be positive");
    if (layer.weight_density < 0 || layer.weight_density > 1 || layer.input_density < 0 ||
        layer.input_density > 1) {
        throw Error("layer densities must be in [0,1]");
    }
}

LayerShape lower_conv_to_matmul(const ConvShape& conv, double weight_density,
                                double input_density) {
    if (conv.in_channels <= 0 || conv.out_channels <= 0 || conv.kernel <= 0 ||
        conv.stride <= 0 || conv.groups <= 0) {
        throw Error("invalid conv shape");
    }
    int64_t out_h = (conv.in_h + 2 * conv.pad - conv.kernel) / conv.stride + 1;
    int64_t out_w = (conv.in_w + 2 * conv.pad - conv.kernel) / conv.stride + 1;
    if (out_h <= 0 || out_w <= 0) throw Error("conv output collapses to zero");
    LayerShape layer;
    layer.m = out_h * out_w;
    layer.k = (conv.in_channels / conv.groups) * conv.kernel * conv.kernel;
    layer.n = conv.out_channels;
    layer.weight_density = weight_density;
    layer.input_density = input_density;
    return layer;
}

uint64_t block_stored_bits(int64_t rows, int64_t cols, uint64_t nnz, MatrixFormat format,
                           const BitWidths& bw, const ArrayConfig& cfg) {
    if (format == MatrixFormat::kDense) {
        return uint64_t(rows) * uint64_t(cols) * uint64_t(bw.value_bits);
    }
    // Per-array-tile CSC: every 64x64 tile carries its own pointer array.
    uint64_t row_tiles = ceil_div(uint64_t(rows), uint64_t(cfg.pe_rows));
    uint64_t col_tiles = ceil_div(uint64_t(cols), uint64_t(cfg.pe_cols));
    uint64_t pointer_entries = row_tiles * (uint64_t(cols) + col_tiles);
    return nnz * uint64_t(bw.value_bits + bw.index_bits) +
           pointer_entries * uint64_t(bw.pointer_bits);
}

uint64_t block_stored_bits(int64_t rows, int64_t cols, double density, MatrixFormat format,
                           const BitWidths& bw, const ArrayConfig& cfg) {
    uint64_t nnz = uint64_t(std::llround(density * double(rows) * double(cols)));
    return block_stored_bits(rows, cols, nnz, format, bw, cfg);
}

namespace {

int64_t block_dim(int64_t tiles, int64_t tile_dim, int64_t layer_dim) {
    return std::min(tiles * tile_dim, layer_dim);
}

struct PlanContext {
    const LayerShape& layer;
    const BufferConfig& buf;
    OperandFormats formats;
    const BitWidths& bw;
    const ArrayConfig& cfg;

    bool weight_fits(int64_t k, int64_t n) const {
        return block_stored_bits(k, n, layer.weight_density, formats.weight, bw, cfg) <=
               buf.weight_bits();
    }
    bool input_fits(int64_t m, int64_t k) const {
        return block_stored_bits(m, k, layer.input_density, formats.input, bw, cfg) <=
               buf.input_bits();
    }
    bool psum_fits(int64_t m, int64_t n) const {
        return uint64_t(m) * uint64_t(n) * uint64_t(bw.psum_bits) <= buf.psum_bits();
    }
    bool fits(int64_t m, int64_t k, int64_t n) const {
        return weight_fits(k, n) && input_fits(m, k) && psum_fits(m, n);
    }
};

}  // namespace

TilingPlan plan_tiles(const LayerShape& layer, const BufferConfig& buf, OperandFormats formats,
                      const BitWidths& bw, const ArrayConfig& cfg) {
    validate(layer);
    validate(buf);
    PlanContext ctx{layer, buf, formats, bw, cfg};

    TilingPlan plan;
    plan.m_block = block_dim(1, cfg.pe_rows, layer.m);
    plan.k_block = block_dim(1, cfg.pe_rows, layer.k);
    plan.n_block = block_dim(1, cfg.pe_cols, layer.n);
    if (!ctx.fits(plan.m_block, plan.k_block, plan.n_block)) {
        throw Infeasible("a single array tile does not fit the buffer partitions");
    }

    auto grow = [&](int64_t& dim, int64_t tile, int64_t cap, auto probe) {
        int64_t tiles = ceil_div(uint64_t(dim), uint64_t(tile));
        while (block_dim(tiles, tile, cap) < cap) {
            int64_t next = block_dim(tiles + 1, tile, cap);
            if (!probe(next)) break;
            dim = next;
            ++tiles;
        }
    };
    grow(plan.k_block, cfg.pe_rows, layer.k,
         [&](int64_t k) { return ctx.fits(plan.m_block, k, plan.n_block); });

    // M-block size alone sets the weight re-fetch count, so N growth must
    // not eat the psum capacity that the input-achievable M block needs.
    int64_t m_reach = plan.m_block;
    grow(m_reach, cfg.pe_rows, layer.m,
         [&](int64_t m) { return ctx.input_fits(m, plan.k_block); });
    grow(plan.n_block, cfg.pe_cols, layer.n, [&](int64_t n) {
        return ctx.weight_fits(plan.k_block, n) && ctx.psum_fits(m_reach, n);
    });
    grow(plan.m_block, cfg.pe_rows, layer.m,
         [&](int64_t m) { return ctx.fits(m, plan.k_block, plan.n_block); });
    return plan;
}

TrafficReport traffic(const LayerShape& layer, const TilingPlan& plan, OperandFormats formats,
                      const BitWidths& bw, const ArrayConfig& cfg) {
    validate(layer);
    TrafficReport r;
    uint64_t w_stored =
        block_stored_bits(layer.k, layer.n, layer.weight_density, formats.weight, bw, cfg);
    uint64_t i_stored =
        block_stored_bits(layer.m, layer.k, layer.input_density, formats.input, bw, cfg);
    r.weight_passes = ceil_div(uint64_t(layer.m), uint64_t(plan.m_block));
    r.input_passes = 1;
    r.dram_read_bits = w_stored * r.weight_passes + i_stored;
    uint64_t out_bits = uint64_t(layer.m) * uint64_t(layer.n) * uint64_t(bw.value_bits);
    r.dram_write_bits = out_bits;

    // Psums live in the psum partition and are updated once per K array
    // tile; fetched operands are written on fill and read once per stream.
    uint64_t k_tiles = ceil_div(uint64_t(layer.k), uint64_t(cfg.pe_rows));
    uint64_t psum_cells = uint64_t(layer.m) * uint64_t(layer.n);
    r.sram_write_bits = r.dram_read_bits + psum_cells * k_tiles * uint64_t(bw.psum_bits) + out_bits;
    r.sram_read_bits =
        r.dram_read_bits + psum_cells * (k_tiles - 1) * uint64_t(bw.psum_bits) + out_bits;
    return r;
}

uint64_t dram_cycles(const TrafficReport& report, int bus_bits_per_cycle) {
    if (bus_bits_per_cycle <= 0) throw Error("bus width must be positive");
    return ceil_div(report.dram_read_bits + report.dram_write_bits,
                    uint64_t(bus_bits_per_cycle));
}

uint64_t layer_compute_cycles(const LayerShape& layer, const TilingPlan& plan,
                              const ArrayConfig& cfg) {
    validate(layer);
    const uint64_t k_tiles = ceil_div(uint64_t(layer.k), uint64_t(cfg.pe_rows));
    const uint64_t n_tiles = ceil_div(uint64_t(layer.n), uint64_t(cfg.pe_cols));
    const uint64_t m_chunks = ceil_div(uint64_t(layer.m), uint64_t(plan.m_block));

    // Per-tile weight preloads hide under the previous tile's stream
    // (shadow weight registers); only the first preload and last drain are
    // exposed. K-edge tiles preload fewer rows.
    auto tile_k = [&](uint64_t kt) {
        return kt + 1 == k_tiles ? uint64_t(layer.k) - kt * uint64_t(cfg.pe_rows)
                                 : uint64_t(cfg.pe_rows);
    };
    uint64_t cycles = tile_k(0);
    uint64_t prev_stream = 0;
    bool first = true;
    for (uint64_t mc = 0; mc < m_chunks; ++mc) {
        uint64_t rows = mc + 1 == m_chunks
                            ? uint64_t(layer.m) - mc * uint64_t(plan.m_block)
                            : uint64_t(plan.m_block);
        for (uint64_t nt = 0; nt < n_tiles; ++nt) {
            for (uint64_t kt = 0; kt < k_tiles; ++kt) {
                if (!first) cycles += std::max(prev_stream, tile_k(kt));
                first = false;
                prev_stream = rows;
            }
        }
    }
    cycles += prev_stream;  // last tile's stream is never overlapped away
    cycles += uint64_t(cfg.pe_rows) + uint64_t(cfg.pe_cols) - 2;
    return cycles;
}

uint64_t total_runtime_cycles(uint64_t compute_cycles, const TrafficReport& report,
                              const BufferConfig& buf) {
    return std::max(compute_cycles, dram_cycles(report, buf.dram_bus_bits_per_cycle));
}

}  // namespace sod
