#pragma once

#include "sod/memsys.hpp"
#include "sod/systolic.hpp"

namespace sod {

// Per-event energies in pJ and area anchors in effective TOPS/mm2.
// The area anchors pin the throughput/area table for dense and
// sparse-capable logic with and without SRAM; the energy constants are
// calibration knobs documented in the README, not measurements.
struct CostParams {
    double e_mac_pj = 1.0;
    double e_sram_bit_pj = 0.31;   // ~5 pJ per 16-bit word
    double e_dram_bit_pj = 40.0;   // ~640 pJ per 16-bit word
    double e_decomp_elem_pj = 0.5;

    double dense_logic_tpa = 0.956;
    double sod_logic_tpa = 0.946;
    double dense_total_tpa = 0.430;
    double sod_total_tpa = 0.428;
    double accumulator_area_fraction = 0.05;  // nominal share of dense logic

    double idle_pe_power_fraction = 0.3;
    bool power_gating_enabled = false;
    int gating_domain_rows = 8;
    int gating_domain_cols = 8;
};

void validate(const CostParams& p);

// R*C*2*clock in tera-ops/s.
double peak_tops(const ArrayConfig& cfg);

struct AreaBreakdown {
    double pe_array_mm2 = 0.0;
    double accumulator_mm2 = 0.0;
    double decomp_mm2 = 0.0;
    double sram_mm2 = 0.0;

    double dense_logic_mm2() const { return pe_array_mm2 + accumulator_mm2; }
    double sod_logic_mm2() const { return dense_logic_mm2() + decomp_mm2; }
    double dense_total_mm2() const { return dense_logic_mm2() + sram_mm2; }
    double sod_total_mm2() const { return sod_logic_mm2() + sram_mm2; }
};

// Areas divided out of the anchors: dense logic = peak/dense_logic_tpa,
// the decompression unit is the sod/dense logic difference, SRAM is the
// dense total remainder scaled linearly with capacity.
AreaBreakdown calibrated_areas(const CostParams& p, const ArrayConfig& cfg,
                               uint64_t sram_capacity_bytes);

// Dense-equivalent ops (2*M*K*N) over wall time, regardless of density.
double effective_tops(double seconds, const LayerShape& layer);

struct ComputeTotals {
    uint64_t mapped_macs = 0;
    uint64_t total_mac_slots = 0;

    double mapping_util() const {
        return total_mac_slots ? double(mapped_macs) / double(total_mac_slots) : 0.0;
    }
};

// Multiplier on the idle-slot energy term: whole unmapped gating domains
// are powered off, floor-quantized at domain granularity.
double power_gating_idle_multiplier(double mapping_util, const CostParams& p,
                                    const ArrayConfig& cfg);

// E = dram*e_dram + sram*e_sram + mapped*e_mac
//     + idle_slots*idle_fraction*e_mac*(gating multiplier)
//     + decompressed*e_decomp
double energy_joules(const TrafficReport& traffic, const ComputeTotals& compute,
                     uint64_t decompressed_elems, const CostParams& p,
                     const ArrayConfig& cfg);

// One experiment point as reported in the CSV.
struct MetricsPoint {
    double density_w = 0.0;
    double density_i = 0.0;
    uint64_t cycles = 0;
    uint64_t dram_bits = 0;
    uint64_t sram_bits = 0;
    uint64_t mapped_macs = 0;
    uint64_t effective_macs = 0;
    double mapping_util = 0.0;
    double effective_util = 0.0;
    double raw_tops = 0.0;
    double effective_tops = 0.0;
    double tpa_logic = 0.0;
    double tpa_total = 0.0;
    double energy_j = 0.0;
    double energy_eff = 0.0;  // effective ops per joule
    AreaBreakdown areas;
};

}  // namespace sod
