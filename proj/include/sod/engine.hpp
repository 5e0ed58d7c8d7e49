#pragma once

#include <optional>
#include <string>

#include "sod/baselines.hpp"
#include "sod/cost.hpp"
#include "sod/decomp.hpp"
#include "sod/memsys.hpp"

namespace sod {

enum class EngineKind { kSod, kDense, kEse, kScnn, kSnap };

const char* engine_name(EngineKind kind);
std::optional<EngineKind> parse_engine(const std::string& name);

struct SimConfig {
    ArrayConfig array;
    BufferConfig buffer;
    DecompConfig decomp;
    CostParams cost;
    BaselineSet baselines = default_baselines();
    LayerShape sweep_layer{256, 256, 256, 1.0, 1.0};
};

// Full-model result for one layer on the simulated engines (sod or
// dense). Operand nonzero structure is drawn from the seeded generator;
// every reported count is exact for that draw. The component-level cycle
// models are validated against these closed forms in the test suites.
struct LayerRun {
    LayerShape nominal;   // layer as declared (table densities)
    LayerShape measured;  // densities of the drawn operands
    OperandFormats formats;
    TilingPlan plan;
    TrafficReport traffic;
    uint64_t compute_cycles = 0;
    uint64_t runtime_cycles = 0;
    ComputeTotals compute;
    uint64_t effective_macs = 0;
    uint64_t decompressed_elems = 0;
    MetricsPoint metrics;
};

// kind must be kSod or kDense. With force_weight_csc the weight operand
// stays compressed even when fully dense (the density-sweep storage
// contract); otherwise an operand at density 1.0 bypasses compression.
LayerRun run_layer(EngineKind kind, const LayerShape& layer, const SimConfig& cfg,
                   uint64_t seed, bool force_weight_csc = false);

// Baseline metrics derived from a SoD run via the trend curves. Only the
// throughput/area and energy columns are meaningful for analytic engines.
MetricsPoint derive_baseline_metrics(const LayerRun& sod_run, BaselineKind kind,
                                     int64_t kernel, int64_t stride, const SimConfig& cfg);

// Dense comparison engine: same array and tiles, dense storage and
// traffic, no decompression in area or energy.
LayerRun dense_baseline_run(const LayerShape& layer, const SimConfig& cfg, uint64_t seed);

}  // namespace sod
