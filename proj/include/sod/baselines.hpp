#pragma once

#include <vector>

#include "sod/cost.hpp"

namespace sod {

struct CurveAnchor {
    double density = 0.0;
    double ratio = 0.0;
};

enum class CurveRule {
    kReciprocal,      // alpha/d + beta fitted through two anchors
    kPiecewiseLinear  // linear between anchors, clamped outside
};

// A trend curve over density, reproducing its anchors exactly.
struct BaselineCurve {
    CurveRule rule = CurveRule::kPiecewiseLinear;
    std::vector<CurveAnchor> anchors;

    double eval(double density) const;
};

// Benchmark-only SCNN corrections: psum scatter congestion grows with the
// spatial kernel area (the sweep's kernel-1 shape is its best case), and
// large-stride first layers pin its multiplier occupancy at the reported
// 18% against the 79% reference. Calibration values, config-overridable.
struct ScnnBenchCorrection {
    double kernel_tpa_coeff = 0.025;
    double kernel_eff_coeff = 0.056;
    double congested_util = 0.18;
    double reference_util = 0.79;
    int64_t stride_threshold = 4;
};

struct BaselineSet {
    BaselineCurve ese_tpa;   // ESE tpa / SoD tpa
    BaselineCurve ese_eff;   // SoD energy-eff / ESE energy-eff
    BaselineCurve scnn_tpa;  // SoD tpa / SCNN tpa
    BaselineCurve scnn_eff;  // SoD energy-eff / SCNN energy-eff
    BaselineCurve snap_tpa;  // SoD tpa / SNAP tpa
    BaselineCurve snap_eff;  // SoD energy-eff / SNAP energy-eff
    ScnnBenchCorrection scnn_bench;
};

BaselineSet default_baselines();

struct EseRatios {
    double tpa_ese_over_sod = 0.0;
    double eff_sod_over_ese = 0.0;
};
struct SparseCnnRatios {
    double tpa_sod_over_baseline = 0.0;
    double eff_sod_over_baseline = 0.0;
};

// All three throw on density <= 0.
EseRatios ese_model(double density, const BaselineSet& set = default_baselines());
SparseCnnRatios scnn_model(double density, const BaselineSet& set = default_baselines());
SparseCnnRatios snap_model(double density, const BaselineSet& set = default_baselines());

// SoD advantage (sod metric / baseline metric) for a benchmark layer;
// kernel/stride feed the SCNN corrections, ESE and SNAP use the plain
// curves.
struct SodAdvantage {
    double tpa = 1.0;
    double energy_eff = 1.0;
};

enum class BaselineKind { kEse, kScnn, kSnap };

SodAdvantage sod_advantage(BaselineKind kind, double weight_density, int64_t kernel,
                           int64_t stride, const BaselineSet& set);

}  // namespace sod
