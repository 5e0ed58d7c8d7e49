#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sod/config.hpp"
#include "sod/csc_file.hpp"
#include "sod/harness.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitCalibration = 3;

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> sets;
    uint64_t seed = 1;
    std::string out;
};

sod::SimConfig load_config(const CommonOpts& opts) {
    sod::ConfigMap map;
    if (!opts.config_path.empty()) map = sod::parse_config_file(opts.config_path);
    sod::apply_overrides(map, opts.sets);
    return sod::make_sim_config(map);
}

void write_output(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream os(out);
    if (!os) throw sod::Error("cannot open for write: " + out);
    os << text;
}

std::vector<sod::EngineKind> parse_engines(const std::string& list) {
    std::vector<sod::EngineKind> engines;
    std::istringstream is(list);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        auto kind = sod::parse_engine(item);
        if (!kind) throw sod::Error("unknown engine '" + item + "'");
        engines.push_back(*kind);
    }
    if (engines.empty()) throw sod::Error("engine list is empty");
    return engines;
}

int cmd_sweep(const CommonOpts& opts, const std::string& density_spec,
              const std::string& engine_list, const std::string& layer_spec) {
    sod::SimConfig cfg = load_config(opts);
    sod::Experiment exp;
    exp.seed = opts.seed;
    exp.sweep = sod::parse_sweep_spec(density_spec);
    exp.engines = parse_engines(engine_list);
    if (!layer_spec.empty()) {
        sod::LayerShape layer;
        if (sscanf(layer_spec.c_str(), "%ld,%ld,%ld", &layer.m, &layer.k, &layer.n) != 3) {
            throw sod::Error("--layer expects M,K,N");
        }
        exp.layers.push_back(layer);
    }
    write_output(opts.out, sod::to_csv(sod::run_sweep(exp, cfg)));
    return 0;
}

int cmd_bench(const CommonOpts& opts, const std::string& model_id,
              const std::string& engine_list) {
    sod::SimConfig cfg = load_config(opts);
    sod::BenchModel model;
    if (!sod::parse_bench_model(model_id, &model)) {
        throw sod::Error("unknown model '" + model_id +
                         "' (alexnet-conv|vgg16-conv|bert-squad|bert-mnli)");
    }
    sod::BenchResult result =
        sod::run_benchmark(model, parse_engines(engine_list), cfg, opts.seed);
    write_output(opts.out, sod::to_csv(result.rows));
    for (const auto& adv : result.advantages) {
        std::cerr << result.suite.id << " vs " << sod::engine_name(adv.baseline)
                  << ": tpa advantage " << adv.tpa << "x, energy-eff advantage "
                  << adv.energy_eff << "x (MAC-weighted mean of layer ratios)\n";
    }
    return 0;
}

int cmd_encode(const std::string& in, const std::string& out) {
    sod::DenseMatrix m = sod::read_dense_text_file(in);
    sod::BitWidths bw;
    while (m.rows > bw.max_rows()) bw.index_bits += 8;
    for (int32_t v : m.data) {
        while (bw.value_bits < 31 && (int64_t(v) >= int64_t(1) << (bw.value_bits - 1) ||
                                      int64_t(v) < -(int64_t(1) << (bw.value_bits - 1)))) {
            ++bw.value_bits;
        }
    }
    sod::write_csc_file(out, sod::csc_encode(m, bw), bw);
    return 0;
}

int cmd_decode(const std::string& in, const std::string& out) {
    sod::CscMatrix c = sod::read_csc_file(in);
    sod::write_dense_text_file(out, sod::csc_decode(c));
    return 0;
}

int cmd_calibrate(const CommonOpts& opts) {
    sod::SimConfig cfg = load_config(opts);
    const double peak = sod::peak_tops(cfg.array);
    sod::AreaBreakdown areas =
        sod::calibrated_areas(cfg.cost, cfg.array, cfg.buffer.capacity_bytes);
    const double dense_logic_tpa = peak / areas.dense_logic_mm2();
    const double sod_logic_tpa = peak / areas.sod_logic_mm2();
    const double dense_total_tpa = peak / areas.dense_total_mm2();
    const double sod_total_tpa = peak / areas.sod_total_mm2();
    const double degradation = 1.0 - sod_logic_tpa / dense_logic_tpa;
    const double decomp_fraction = areas.decomp_mm2 / areas.dense_logic_mm2();

    std::ostringstream os;
    os.precision(6);
    os << "peak_tops " << peak << "\n"
       << "tpa_logic dense " << dense_logic_tpa << " sod " << sod_logic_tpa << "\n"
       << "tpa_total dense " << dense_total_tpa << " sod " << sod_total_tpa << "\n"
       << "logic_degradation " << degradation << "\n"
       << "area_mm2 pe_array " << areas.pe_array_mm2 << " accumulator "
       << areas.accumulator_mm2 << " decomp " << areas.decomp_mm2 << " sram "
       << areas.sram_mm2 << "\n"
       << "decomp_fraction_of_dense_logic " << decomp_fraction << "\n";

    bool ok = true;
    auto check = [&](const char* name, double got, double want) {
        bool pass = std::abs(got - want) < 5e-4;
        os << "check " << name << " " << got << " vs " << want << " "
           << (pass ? "ok" : "FAIL") << "\n";
        ok = ok && pass;
    };
    check("tpa_logic_dense", dense_logic_tpa, cfg.cost.dense_logic_tpa);
    check("tpa_logic_sod", sod_logic_tpa, cfg.cost.sod_logic_tpa);
    check("tpa_total_dense", dense_total_tpa, cfg.cost.dense_total_tpa);
    check("tpa_total_sod", sod_total_tpa, cfg.cost.sod_total_tpa);
    bool degr_ok = degradation <= 0.02;
    os << "check logic_degradation<=0.02 " << (degr_ok ? "ok" : "FAIL") << "\n";
    bool frac_ok = decomp_fraction >= 0.01 && decomp_fraction <= 0.03;
    os << "check decomp_fraction_in_[0.01,0.03] " << (frac_ok ? "ok" : "FAIL") << "\n";
    ok = ok && degr_ok && frac_ok;
    os << (ok ? "calibration ok\n" : "calibration FAILED\n");
    write_output(opts.out, os.str());
    return ok ? 0 : kExitCalibration;
}

int cmd_gen_bench(const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    for (sod::BenchModel model :
         {sod::BenchModel::kAlexnetConv, sod::BenchModel::kVgg16Conv,
          sod::BenchModel::kBertSquad, sod::BenchModel::kBertMnli}) {
        sod::BenchmarkSuite suite = sod::benchmark_suite(model);
        std::string path = (fs::path(out_dir) / (suite.id + ".tsv")).string();
        std::ofstream os(path);
        if (!os) throw sod::Error("cannot open for write: " + path);
        os << sod::suite_table(suite);
        std::cout << "wrote " << path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse-on-dense accelerator simulator"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string density_spec = "0.1:1.0:0.1";
    std::string engine_list = "sod";
    std::string layer_spec;
    std::string model_id;
    std::string in_path, out_path;
    std::string gen_dir = "data/bench";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opts.config_path, "flat key=value config file");
        cmd->add_option("--set", opts.sets, "override config key=value");
        cmd->add_option("--seed", opts.seed, "base random seed");
        cmd->add_option("--out", opts.out, "output path (default stdout)");
    };

    CLI::App* sweep = app.add_subcommand("sweep", "density sweep over the sweep layer");
    add_common(sweep);
    sweep->add_option("--density", density_spec, "start:end:step (default 0.1:1.0:0.1)");
    sweep->add_option("--engines", engine_list, "comma list: sod,dense,ese,scnn,snap");
    sweep->add_option("--layer", layer_spec, "override sweep layer as M,K,N");

    CLI::App* bench = app.add_subcommand("bench", "run a benchmark suite");
    add_common(bench);
    bench->add_option("--model", model_id, "alexnet-conv|vgg16-conv|bert-squad|bert-mnli")
        ->required();
    bench->add_option("--engines", engine_list, "comma list: sod,dense,ese,scnn,snap");

    CLI::App* encode = app.add_subcommand("encode", "dense text dump -> binary CSC file");
    encode->add_option("input", in_path, "dense text dump")->required();
    encode->add_option("output", out_path, "CSC output path")->required();

    CLI::App* decode = app.add_subcommand("decode", "binary CSC file -> dense text dump");
    decode->add_option("input", in_path, "CSC input path")->required();
    decode->add_option("output", out_path, "dense text output path")->required();

    CLI::App* calibrate =
        app.add_subcommand("calibrate", "recompute throughput/area table and area breakdown");
    add_common(calibrate);

    CLI::App* gen = app.add_subcommand("gen-bench", "write benchmark density tables");
    gen->add_option("--out-dir", gen_dir, "output directory (default data/bench)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) return cmd_sweep(opts, density_spec, engine_list, layer_spec);
        if (bench->parsed()) return cmd_bench(opts, model_id, engine_list);
        if (encode->parsed()) return cmd_encode(in_path, out_path);
        if (decode->parsed()) return cmd_decode(in_path, out_path);
        if (calibrate->parsed()) return cmd_calibrate(opts);
        if (gen->parsed()) return cmd_gen_bench(gen_dir);
    } catch (const sod::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
