#include "sod/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace sod {

void ConfigMap::set(const std::string& key, const std::string& value,
                    const std::string& where) {
    entries[key] = {value, where};
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const ConfigMap::Entry& e, const std::string& key,
                       const std::string& what) {
    throw ConfigError(e.where + ": key '" + key + "': " + what + " (got '" + e.value + "')");
}

double to_double(const ConfigMap::Entry& e, const std::string& key) {
    try {
        size_t pos = 0;
        double v = std::stod(e.value, &pos);
        if (pos != e.value.size()) fail(e, key, "trailing characters after number");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        fail(e, key, "expected a number");
    }
}

int64_t to_int(const ConfigMap::Entry& e, const std::string& key) {
    int64_t v = 0;
    auto [p, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
    if (ec != std::errc() || p != e.value.data() + e.value.size()) {
        fail(e, key, "expected an integer");
    }
    return v;
}

bool to_bool(const ConfigMap::Entry& e, const std::string& key) {
    if (e.value == "true" || e.value == "1" || e.value == "on") return true;
    if (e.value == "false" || e.value == "0" || e.value == "off") return false;
    fail(e, key, "expected true/false");
}

// baseline.<kind>.<metric>.anchor.<i>.(density|ratio)
bool apply_anchor_key(BaselineSet& set, const std::string& key,
                      const ConfigMap::Entry& entry) {
    std::istringstream is(key);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(is, part, '.')) parts.push_back(part);
    if (parts.size() != 6 || parts[0] != "baseline" || parts[3] != "anchor") return false;
    BaselineCurve* curve = nullptr;
    if (parts[1] == "ese") curve = parts[2] == "tpa" ? &set.ese_tpa : &set.ese_eff;
    else if (parts[1] == "scnn") curve = parts[2] == "tpa" ? &set.scnn_tpa : &set.scnn_eff;
    else if (parts[1] == "snap") curve = parts[2] == "tpa" ? &set.snap_tpa : &set.snap_eff;
    if (!curve || (parts[2] != "tpa" && parts[2] != "eff")) return false;
    size_t idx = 0;
    try {
        idx = std::stoul(parts[4]);
    } catch (...) {
        return false;
    }
    if (idx > 8) fail(entry, key, "anchor index out of range");
    if (curve->anchors.size() <= idx) curve->anchors.resize(idx + 1);
    if (parts[5] == "density") curve->anchors[idx].density = to_double(entry, key);
    else if (parts[5] == "ratio") curve->anchors[idx].ratio = to_double(entry, key);
    else return false;
    return true;
}

}  // namespace

ConfigMap parse_config_text(const std::string& text, const std::string& source) {
    ConfigMap config;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string where = source + ":" + std::to_string(lineno);
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": empty key");
        config.set(key, value, where);
    }
    return config;
}

ConfigMap parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_config_text(buf.str(), path);
}

void apply_overrides(ConfigMap& config, const std::vector<std::string>& overrides) {
    for (const std::string& item : overrides) {
        size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ConfigError("--set expects key=value, got '" + item + "'");
        }
        config.set(trim(item.substr(0, eq)), trim(item.substr(eq + 1)), "--set");
    }
}

SimConfig make_sim_config(const ConfigMap& config) {
    SimConfig cfg;
    for (const auto& [key, entry] : config.entries) {
        if (key == "array.rows") cfg.array.pe_rows = int(to_int(entry, key));
        else if (key == "array.cols") cfg.array.pe_cols = int(to_int(entry, key));
        else if (key == "array.clock_hz") cfg.array.clock_hz = to_double(entry, key);
        else if (key == "bits.value") cfg.array.bw.value_bits = int(to_int(entry, key));
        else if (key == "bits.index") cfg.array.bw.index_bits = int(to_int(entry, key));
        else if (key == "bits.pointer") cfg.array.bw.pointer_bits = int(to_int(entry, key));
        else if (key == "bits.psum") cfg.array.bw.psum_bits = int(to_int(entry, key));
        else if (key == "buffer.capacity_bytes") cfg.buffer.capacity_bytes = uint64_t(to_int(entry, key));
        else if (key == "buffer.weight_fraction") cfg.buffer.weight_fraction = to_double(entry, key);
        else if (key == "buffer.input_fraction") cfg.buffer.input_fraction = to_double(entry, key);
        else if (key == "buffer.psum_fraction") cfg.buffer.psum_fraction = to_double(entry, key);
        else if (key == "buffer.dram_bus_bits_per_cycle")
            cfg.buffer.dram_bus_bits_per_cycle = int(to_int(entry, key));
        else if (key == "decomp.nz_fetch_width") cfg.decomp.nz_fetch_width = int(to_int(entry, key));
        else if (key == "decomp.ptr_fetch_width") cfg.decomp.ptr_fetch_width = int(to_int(entry, key));
        else if (key == "decomp.pipeline_latency") cfg.decomp.pipeline_latency = int(to_int(entry, key));
        else if (key == "decomp.dense_feed_width") cfg.decomp.dense_feed_width = int(to_int(entry, key));
        else if (key == "decomp.double_buffered") cfg.decomp.double_buffered = to_bool(entry, key);
        else if (key == "energy.mac_pj") cfg.cost.e_mac_pj = to_double(entry, key);
        else if (key == "energy.sram_pj_per_bit") cfg.cost.e_sram_bit_pj = to_double(entry, key);
        else if (key == "energy.dram_pj_per_bit") cfg.cost.e_dram_bit_pj = to_double(entry, key);
        else if (key == "energy.decomp_pj") cfg.cost.e_decomp_elem_pj = to_double(entry, key);
        else if (key == "energy.idle_pe_fraction") cfg.cost.idle_pe_power_fraction = to_double(entry, key);
        else if (key == "area.dense_logic_tpa") cfg.cost.dense_logic_tpa = to_double(entry, key);
        else if (key == "area.sod_logic_tpa") cfg.cost.sod_logic_tpa = to_double(entry, key);
        else if (key == "area.dense_total_tpa") cfg.cost.dense_total_tpa = to_double(entry, key);
        else if (key == "area.sod_total_tpa") cfg.cost.sod_total_tpa = to_double(entry, key);
        else if (key == "area.accumulator_fraction")
            cfg.cost.accumulator_area_fraction = to_double(entry, key);
        else if (key == "power_gating.enabled") cfg.cost.power_gating_enabled = to_bool(entry, key);
        else if (key == "power_gating.domain_rows") cfg.cost.gating_domain_rows = int(to_int(entry, key));
        else if (key == "power_gating.domain_cols") cfg.cost.gating_domain_cols = int(to_int(entry, key));
        else if (key == "sweep.layer_m") cfg.sweep_layer.m = to_int(entry, key);
        else if (key == "sweep.layer_k") cfg.sweep_layer.k = to_int(entry, key);
        else if (key == "sweep.layer_n") cfg.sweep_layer.n = to_int(entry, key);
        else if (key == "baseline.scnn.kernel_tpa_coeff")
            cfg.baselines.scnn_bench.kernel_tpa_coeff = to_double(entry, key);
        else if (key == "baseline.scnn.kernel_eff_coeff")
            cfg.baselines.scnn_bench.kernel_eff_coeff = to_double(entry, key);
        else if (key == "baseline.scnn.stride_util")
            cfg.baselines.scnn_bench.congested_util = to_double(entry, key);
        else if (key == "baseline.scnn.stride_util_ref")
            cfg.baselines.scnn_bench.reference_util = to_double(entry, key);
        else if (key == "baseline.scnn.stride_threshold")
            cfg.baselines.scnn_bench.stride_threshold = to_int(entry, key);
        else if (apply_anchor_key(cfg.baselines, key, entry)) {
            // handled
        } else {
            throw ConfigError(entry.where + ": unknown key '" + key + "'");
        }
    }
    validate(cfg.array.bw);
    validate(cfg.buffer);
    validate(cfg.cost);
    if (cfg.array.pe_rows <= 0 || cfg.array.pe_cols <= 0 || cfg.array.clock_hz <= 0) {
        throw ConfigError("array config fields must be positive");
    }
    validate(cfg.sweep_layer);
    return cfg;
}

}  // namespace sod
