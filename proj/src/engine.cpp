#include "sod/engine.hpp"

namespace sod {

const char* engine_name(EngineKind kind) {
    switch (kind) {
        case EngineKind::kSod: return "sod";
        case EngineKind::kDense: return "dense";
        case EngineKind::kEse: return "ese";
        case EngineKind::kScnn: return "scnn";
        case EngineKind::kSnap: return "snap";
    }
    return "?";
}

std::optional<EngineKind> parse_engine(const std::string& name) {
    if (name == "sod") return EngineKind::kSod;
    if (name == "dense") return EngineKind::kDense;
    if (name == "ese") return EngineKind::kEse;
    if (name == "scnn") return EngineKind::kScnn;
    if (name == "snap") return EngineKind::kSnap;
    return std::nullopt;
}

namespace {

struct OperandStructure {
    uint64_t nnz = 0;
    std::vector<uint64_t> k_counts;  // nonzeros per contraction index
};

// Weight is K x N (per-row counts), input is M x K (per-column counts);
// both stream from the shared generator without materializing.
OperandStructure weight_structure(const LayerShape& layer, const BitWidths& bw,
                                  uint64_t seed) {
    OperandStructure s;
    s.k_counts.assign(size_t(layer.k), 0);
    for_each_random_nonzero(int(layer.k), int(layer.n), layer.weight_density, seed, bw,
                            [&](int r, int, int32_t) {
                                ++s.k_counts[size_t(r)];
                                ++s.nnz;
                            });
    return s;
}

OperandStructure input_structure(const LayerShape& layer, const BitWidths& bw,
                                 uint64_t seed) {
    OperandStructure s;
    s.k_counts.assign(size_t(layer.k), 0);
    for_each_random_nonzero(int(layer.m), int(layer.k), layer.input_density, seed, bw,
                            [&](int, int c, int32_t) {
                                ++s.k_counts[size_t(c)];
                                ++s.nnz;
                            });
    return s;
}

constexpr uint64_t kWeightTag = 0x77u;
constexpr uint64_t kInputTag = 0x69u;

// Stall-free per-tile pipeline cost (pointer load, pipeline fill, dense
// emission) summed over the operand's tile grid for one pass.
uint64_t serial_decomp_cycles(int64_t rows, int64_t cols, const DecompConfig& dcfg,
                              const ArrayConfig& cfg) {
    auto ceil_div = [](uint64_t a, uint64_t b) { return (a + b - 1) / b; };
    uint64_t total = 0;
    for (const TilePlanEntry& t :
         tile_grid(int(rows), int(cols), cfg.pe_rows, cfg.pe_cols)) {
        total += ceil_div(uint64_t(t.tile_cols) + 1, uint64_t(dcfg.ptr_fetch_width)) +
                 uint64_t(dcfg.pipeline_latency) +
                 uint64_t(t.tile_cols) *
                     ceil_div(uint64_t(t.tile_rows), uint64_t(dcfg.dense_feed_width));
    }
    return total;
}

}  // namespace

LayerRun run_layer(EngineKind kind, const LayerShape& layer, const SimConfig& cfg,
                   uint64_t seed, bool force_weight_csc) {
    if (kind != EngineKind::kSod && kind != EngineKind::kDense) {
        throw Error("run_layer simulates the sod and dense engines only");
    }
    validate(layer);
    const BitWidths& bw = cfg.array.bw;
    validate(bw, layer.k);

    LayerRun run;
    run.nominal = layer;

    OperandStructure w = weight_structure(layer, bw, derive_seed(seed, kWeightTag));
    OperandStructure in = input_structure(layer, bw, derive_seed(seed, kInputTag));
    run.measured = layer;
    run.measured.weight_density = double(w.nnz) / double(uint64_t(layer.k) * layer.n);
    run.measured.input_density = double(in.nnz) / double(uint64_t(layer.m) * layer.k);

    if (kind == EngineKind::kSod) {
        bool weight_csc = force_weight_csc || layer.weight_density < 1.0;
        bool input_csc = layer.input_density < 1.0;
        run.formats.weight = weight_csc ? MatrixFormat::kCsc : MatrixFormat::kDense;
        run.formats.input = input_csc ? MatrixFormat::kCsc : MatrixFormat::kDense;
    }  // dense engine keeps both operands dense

    run.plan = plan_tiles(run.measured, cfg.buffer, run.formats, bw, cfg.array);
    run.traffic = traffic(run.measured, run.plan, run.formats, bw, cfg.array);
    run.compute_cycles = layer_compute_cycles(layer, run.plan, cfg.array);
    if (!cfg.decomp.double_buffered) {
        // Without tile double buffering the array waits out every tile's
        // decompression instead of hiding it behind the previous compute.
        if (run.formats.weight == MatrixFormat::kCsc) {
            run.compute_cycles += serial_decomp_cycles(layer.k, layer.n, cfg.decomp,
                                                       cfg.array) *
                                  uint64_t(run.traffic.weight_passes);
        }
        if (run.formats.input == MatrixFormat::kCsc) {
            run.compute_cycles += serial_decomp_cycles(layer.m, layer.k, cfg.decomp,
                                                       cfg.array) *
                                  uint64_t(run.traffic.input_passes);
        }
    }
    run.runtime_cycles = total_runtime_cycles(run.compute_cycles, run.traffic, cfg.buffer);

    run.compute.mapped_macs = layer.macs();
    run.compute.total_mac_slots = uint64_t(cfg.array.pe_count()) * run.compute_cycles;
    for (int64_t kk = 0; kk < layer.k; ++kk) {
        run.effective_macs += in.k_counts[size_t(kk)] * w.k_counts[size_t(kk)];
    }
    if (run.formats.weight == MatrixFormat::kCsc) {
        run.decompressed_elems +=
            uint64_t(layer.k) * uint64_t(layer.n) * run.traffic.weight_passes;
    }
    if (run.formats.input == MatrixFormat::kCsc) {
        run.decompressed_elems +=
            uint64_t(layer.m) * uint64_t(layer.k) * run.traffic.input_passes;
    }

    MetricsPoint& m = run.metrics;
    m.density_w = layer.weight_density;
    m.density_i = layer.input_density;
    m.cycles = run.runtime_cycles;
    m.dram_bits = run.traffic.dram_read_bits + run.traffic.dram_write_bits;
    m.sram_bits = run.traffic.sram_read_bits + run.traffic.sram_write_bits;
    m.mapped_macs = run.compute.mapped_macs;
    m.effective_macs = run.effective_macs;
    m.mapping_util = run.compute.mapping_util();
    m.effective_util = double(run.effective_macs) / double(run.compute.total_mac_slots);
    m.areas = calibrated_areas(cfg.cost, cfg.array, cfg.buffer.capacity_bytes);

    const double seconds = double(run.runtime_cycles) / cfg.array.clock_hz;
    m.raw_tops = 2.0 * double(run.compute.mapped_macs) / seconds / 1e12;
    m.effective_tops = effective_tops(seconds, layer);
    const bool sod = kind == EngineKind::kSod;
    const double logic = sod ? m.areas.sod_logic_mm2() : m.areas.dense_logic_mm2();
    const double total = sod ? m.areas.sod_total_mm2() : m.areas.dense_total_mm2();
    m.tpa_logic = m.effective_tops / logic;
    m.tpa_total = m.effective_tops / total;
    m.energy_j = energy_joules(run.traffic, run.compute, run.decompressed_elems, cfg.cost,
                               cfg.array);
    m.energy_eff = double(layer.dense_ops()) / m.energy_j;
    return run;
}

MetricsPoint derive_baseline_metrics(const LayerRun& sod_run, BaselineKind kind,
                                     int64_t kernel, int64_t stride, const SimConfig& cfg) {
    SodAdvantage adv = sod_advantage(kind, sod_run.nominal.weight_density, kernel, stride,
                                     cfg.baselines);
    MetricsPoint m;
    m.density_w = sod_run.nominal.weight_density;
    m.density_i = sod_run.nominal.input_density;
    m.tpa_logic = sod_run.metrics.tpa_logic / adv.tpa;
    m.tpa_total = sod_run.metrics.tpa_total / adv.tpa;
    m.energy_eff = sod_run.metrics.energy_eff / adv.energy_eff;
    m.energy_j = double(sod_run.nominal.dense_ops()) / m.energy_eff;
    return m;
}

LayerRun dense_baseline_run(const LayerShape& layer, const SimConfig& cfg, uint64_t seed) {
    return run_layer(EngineKind::kDense, layer, cfg, seed);
}

}  // namespace sod
