#include "sod/cost.hpp"

#include <cmath>

namespace sod {

void validate(const CostParams& p) {
    if (p.e_mac_pj <= 0 || p.e_sram_bit_pj <= 0 || p.e_dram_bit_pj <= 0 ||
        p.e_decomp_elem_pj <= 0) {
        throw Error("energy constants must be positive");
    }
    if (p.dense_logic_tpa <= 0 || p.sod_logic_tpa <= 0 || p.dense_total_tpa <= 0 ||
        p.sod_total_tpa <= 0) {
        throw Error("area anchors must be positive");
    }
    if (p.sod_logic_tpa > p.dense_logic_tpa) {
        throw Error("sod logic tpa cannot exceed dense logic tpa");
    }
    if (p.idle_pe_power_fraction < 0 || p.accumulator_area_fraction < 0 ||
        p.accumulator_area_fraction >= 1) {
        throw Error("fraction parameters out of range");
    }
    if (p.gating_domain_rows <= 0 || p.gating_domain_cols <= 0) {
        throw Error("gating domain dims must be positive");
    }
}

double peak_tops(const ArrayConfig& cfg) {
    return double(cfg.pe_count()) * 2.0 * cfg.clock_hz / 1e12;
}

AreaBreakdown calibrated_areas(const CostParams& p, const ArrayConfig& cfg,
                               uint64_t sram_capacity_bytes) {
    validate(p);
    const double peak = peak_tops(cfg);
    const double dense_logic = peak / p.dense_logic_tpa;
    const double sod_logic = peak / p.sod_logic_tpa;
    const double sram_2mb = peak / p.dense_total_tpa - dense_logic;
    AreaBreakdown a;
    a.accumulator_mm2 = dense_logic * p.accumulator_area_fraction;
    a.pe_array_mm2 = dense_logic - a.accumulator_mm2;
    a.decomp_mm2 = sod_logic - dense_logic;
    a.sram_mm2 = sram_2mb * double(sram_capacity_bytes) / double(2ull << 20);
    return a;
}

double effective_tops(double seconds, const LayerShape& layer) {
    if (seconds <= 0) throw Error("time must be positive");
    return double(layer.dense_ops()) / seconds / 1e12;
}

double power_gating_idle_multiplier(double mapping_util, const CostParams& p,
                                    const ArrayConfig& cfg) {
    if (mapping_util < 0 || mapping_util > 1) throw Error("mapping_util out of [0,1]");
    if (!p.power_gating_enabled) return 1.0;
    const int64_t domains = (int64_t(cfg.pe_rows) / p.gating_domain_rows) *
                            (int64_t(cfg.pe_cols) / p.gating_domain_cols);
    if (domains <= 0) return 1.0;
    const double gated = std::floor((1.0 - mapping_util) * double(domains));
    return 1.0 - gated / double(domains);
}

double energy_joules(const TrafficReport& traffic, const ComputeTotals& compute,
                     uint64_t decompressed_elems, const CostParams& p,
                     const ArrayConfig& cfg) {
    validate(p);
    const double dram_bits = double(traffic.dram_read_bits + traffic.dram_write_bits);
    const double sram_bits = double(traffic.sram_read_bits + traffic.sram_write_bits);
    const uint64_t idle_slots = compute.total_mac_slots - compute.mapped_macs;
    const double idle_mult = power_gating_idle_multiplier(compute.mapping_util(), p, cfg);
    double pj = dram_bits * p.e_dram_bit_pj + sram_bits * p.e_sram_bit_pj +
                double(compute.mapped_macs) * p.e_mac_pj +
                double(idle_slots) * p.idle_pe_power_fraction * p.e_mac_pj * idle_mult +
                double(decompressed_elems) * p.e_decomp_elem_pj;
    return pj * 1e-12;
}

}  // namespace sod
