#pragma once

#include <string>
#include <vector>

#include "sod/bench.hpp"
#include "sod/engine.hpp"

namespace sod {

struct SweepSpec {
    double start = 0.1;
    double end = 1.0;
    double step = 0.1;

    std::vector<double> points() const;
};

SweepSpec parse_sweep_spec(const std::string& text);  // "start:end:step"

struct Experiment {
    std::string name = "sweep";
    SweepSpec sweep;
    uint64_t seed = 1;
    std::vector<EngineKind> engines;
    // Empty means the config's default sweep layer.
    std::vector<LayerShape> layers;
};

void validate(const Experiment& exp);

struct CsvRow {
    std::string experiment;
    std::string engine;
    std::string layer;
    MetricsPoint metrics;
};

extern const char* const kCsvHeader;
std::string format_csv_row(const CsvRow& row);
std::string to_csv(const std::vector<CsvRow>& rows);

// One row per (engine, density, layer); deterministic for a fixed seed.
// SoD stores the swept weight operand compressed at every density.
std::vector<CsvRow> run_sweep(const Experiment& exp, const SimConfig& cfg);

// Per-baseline summary of a benchmark run: MAC-weighted mean of the
// per-layer SoD/baseline ratios.
struct BenchAdvantage {
    EngineKind baseline = EngineKind::kEse;
    double tpa = 0.0;
    double energy_eff = 0.0;
};

struct BenchResult {
    BenchmarkSuite suite;
    std::vector<CsvRow> rows;  // per-layer rows then one "average" row per engine
    std::vector<BenchAdvantage> advantages;
};

BenchResult run_benchmark(BenchModel model, const std::vector<EngineKind>& engines,
                          const SimConfig& cfg, uint64_t seed);

}  // namespace sod
