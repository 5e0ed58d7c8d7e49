#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sod/config.hpp"

using namespace sod;

TEST_CASE("key=value parsing with comments and blanks") {
    ConfigMap map = parse_config_text(
        "# comment\n"
        "array.rows = 32\n"
        "\n"
        "energy.mac_pj=2.5   # trailing comment\n"
        "power_gating.enabled = true\n",
        "test.cfg");
    SimConfig cfg = make_sim_config(map);
    CHECK(cfg.array.pe_rows == 32);
    CHECK(cfg.cost.e_mac_pj == 2.5);
    CHECK(cfg.cost.power_gating_enabled);
}

TEST_CASE("defaults survive an empty config") {
    SimConfig cfg = make_sim_config(ConfigMap{});
    CHECK(cfg.array.pe_rows == 64);
    CHECK(cfg.buffer.capacity_bytes == 2ull << 20);
    CHECK(cfg.cost.dense_logic_tpa == 0.956);
    CHECK(cfg.sweep_layer.m == 256);
}

TEST_CASE("errors carry file and line") {
    CHECK_THROWS_WITH_AS(parse_config_text("array.rows\n", "bad.cfg"),
                         doctest::Contains("bad.cfg:1"), ConfigError);
    ConfigMap map = parse_config_text("array.rows = pony\n", "bad.cfg");
    CHECK_THROWS_WITH_AS(make_sim_config(map), doctest::Contains("bad.cfg:1"), ConfigError);
}

TEST_CASE("unknown keys are rejected with their location") {
    ConfigMap map = parse_config_text("array.depth = 4\n", "typo.cfg");
    CHECK_THROWS_WITH_AS(make_sim_config(map), doctest::Contains("array.depth"), ConfigError);
}

TEST_CASE("--set overrides file values") {
    ConfigMap map = parse_config_text("energy.dram_pj_per_bit = 10\n", "f.cfg");
    apply_overrides(map, {"energy.dram_pj_per_bit=55", "bits.psum=40"});
    SimConfig cfg = make_sim_config(map);
    CHECK(cfg.cost.e_dram_bit_pj == 55.0);
    CHECK(cfg.array.bw.psum_bits == 40);

    CHECK_THROWS_AS(apply_overrides(map, {"no-equals"}), ConfigError);
}

TEST_CASE("all cost keys land in the right fields") {
    ConfigMap map = parse_config_text(
        "energy.mac_pj = 1.5\n"
        "energy.sram_pj_per_bit = 0.4\n"
        "energy.dram_pj_per_bit = 30\n"
        "energy.decomp_pj = 0.7\n"
        "energy.idle_pe_fraction = 0.2\n"
        "area.dense_logic_tpa = 0.9\n"
        "area.sod_logic_tpa = 0.89\n"
        "area.dense_total_tpa = 0.4\n"
        "area.sod_total_tpa = 0.39\n"
        "power_gating.enabled = on\n"
        "power_gating.domain_rows = 16\n"
        "power_gating.domain_cols = 4\n",
        "cost.cfg");
    SimConfig cfg = make_sim_config(map);
    CHECK(cfg.cost.e_mac_pj == 1.5);
    CHECK(cfg.cost.e_sram_bit_pj == 0.4);
    CHECK(cfg.cost.e_dram_bit_pj == 30.0);
    CHECK(cfg.cost.e_decomp_elem_pj == 0.7);
    CHECK(cfg.cost.idle_pe_power_fraction == 0.2);
    CHECK(cfg.cost.dense_logic_tpa == 0.9);
    CHECK(cfg.cost.sod_logic_tpa == 0.89);
    CHECK(cfg.cost.dense_total_tpa == 0.4);
    CHECK(cfg.cost.sod_total_tpa == 0.39);
    CHECK(cfg.cost.power_gating_enabled);
    CHECK(cfg.cost.gating_domain_rows == 16);
    CHECK(cfg.cost.gating_domain_cols == 4);
}

TEST_CASE("baseline anchor keys rebuild curves") {
    ConfigMap map = parse_config_text(
        "baseline.scnn.tpa.anchor.0.density = 0.2\n"
        "baseline.scnn.tpa.anchor.0.ratio = 2.0\n"
        "baseline.scnn.tpa.anchor.1.density = 0.6\n"
        "baseline.scnn.tpa.anchor.1.ratio = 6.0\n",
        "anch.cfg");
    SimConfig cfg = make_sim_config(map);
    CHECK(cfg.baselines.scnn_tpa.eval(0.4) == doctest::Approx(4.0));

    ConfigMap bad = parse_config_text("baseline.scnn.tpa.anchor.0.weight = 1\n", "anch.cfg");
    CHECK_THROWS_AS(make_sim_config(bad), ConfigError);
}

TEST_CASE("scnn bench correction keys") {
    ConfigMap map = parse_config_text(
        "baseline.scnn.kernel_tpa_coeff = 0.05\n"
        "baseline.scnn.stride_util = 0.25\n"
        "baseline.scnn.stride_threshold = 2\n",
        "s.cfg");
    SimConfig cfg = make_sim_config(map);
    CHECK(cfg.baselines.scnn_bench.kernel_tpa_coeff == 0.05);
    CHECK(cfg.baselines.scnn_bench.congested_util == 0.25);
    CHECK(cfg.baselines.scnn_bench.stride_threshold == 2);
}

TEST_CASE("invalid combinations are rejected after assembly") {
    ConfigMap map = parse_config_text("buffer.weight_fraction = 0.9\n", "b.cfg");
    CHECK_THROWS_AS(make_sim_config(map), Error);  // fractions no longer sum to 1
}
