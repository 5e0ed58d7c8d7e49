#include "sod/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

namespace sod {

std::vector<double> SweepSpec::points() const {
    if (step <= 0) throw Error("sweep step must be positive");
    if (start > end) throw Error("sweep start must not exceed end");
    std::vector<double> out;
    int64_t n = int64_t(std::floor((end - start) / step + 0.5));
    for (int64_t i = 0; i <= n; ++i) {
        // snap accumulated step error to a clean grid
        out.push_back(std::round((start + double(i) * step) * 1e9) / 1e9);
    }
    return out;
}

SweepSpec parse_sweep_spec(const std::string& text) {
    SweepSpec spec;
    std::istringstream is(text);
    std::string a, b, c;
    if (!std::getline(is, a, ':') || !std::getline(is, b, ':') || !std::getline(is, c)) {
        throw Error("sweep spec must be start:end:step, got '" + text + "'");
    }
    try {
        spec.start = std::stod(a);
        spec.end = std::stod(b);
        spec.step = std::stod(c);
    } catch (...) {
        throw Error("sweep spec must be numeric start:end:step, got '" + text + "'");
    }
    return spec;
}

void validate(const Experiment& exp) {
    if (exp.engines.empty()) throw Error("experiment needs at least one engine");
    if (exp.sweep.step <= 0) throw Error("sweep step must be positive");
    if (exp.sweep.start > exp.sweep.end) throw Error("sweep start must not exceed end");
    for (const auto& l : exp.layers) validate(l);
}

const char* const kCsvHeader =
    "experiment,engine,layer,density_w,density_i,cycles,dram_bits,sram_bits,"
    "mapped_macs,effective_macs,mapping_util,effective_util,tpa_logic,tpa_total,"
    "energy_j,energy_eff";

namespace {

std::string fmt(double v) {
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

std::string layer_label(const LayerShape& l) {
    return std::to_string(l.m) + "x" + std::to_string(l.k) + "x" + std::to_string(l.n);
}

BaselineKind to_baseline(EngineKind kind) {
    switch (kind) {
        case EngineKind::kEse: return BaselineKind::kEse;
        case EngineKind::kScnn: return BaselineKind::kScnn;
        case EngineKind::kSnap: return BaselineKind::kSnap;
        default: throw Error("not an analytic baseline engine");
    }
}

// Runs fn(i) for i in [0, n) on a bounded pool; items are independent and
// the caller indexes results, so ordering stays deterministic.
template <typename Fn>
void parallel_for(size_t n, Fn fn) {
    size_t workers = std::min<size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mu);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

std::string format_csv_row(const CsvRow& row) {
    const MetricsPoint& m = row.metrics;
    std::ostringstream os;
    os << row.experiment << ',' << row.engine << ',' << row.layer << ',' << fmt(m.density_w)
       << ',' << fmt(m.density_i) << ',' << m.cycles << ',' << m.dram_bits << ','
       << m.sram_bits << ',' << m.mapped_macs << ',' << m.effective_macs << ','
       << fmt(m.mapping_util) << ',' << fmt(m.effective_util) << ',' << fmt(m.tpa_logic)
       << ',' << fmt(m.tpa_total) << ',' << fmt(m.energy_j) << ',' << fmt(m.energy_eff);
    return os.str();
}

std::string to_csv(const std::vector<CsvRow>& rows) {
    std::ostringstream os;
    os << kCsvHeader << '\n';
    for (const auto& row : rows) os << format_csv_row(row) << '\n';
    return os.str();
}

std::vector<CsvRow> run_sweep(const Experiment& exp, const SimConfig& cfg) {
    validate(exp);
    const std::vector<double> densities = exp.sweep.points();
    const std::vector<LayerShape> layers =
        exp.layers.empty() ? std::vector<LayerShape>{cfg.sweep_layer} : exp.layers;
    const bool want_dense =
        std::find(exp.engines.begin(), exp.engines.end(), EngineKind::kDense) !=
        exp.engines.end();

    struct PointRuns {
        LayerRun sod;
        LayerRun dense;
    };
    std::vector<PointRuns> points(densities.size() * layers.size());
    parallel_for(points.size(), [&](size_t idx) {
        size_t di = idx / layers.size();
        size_t li = idx % layers.size();
        LayerShape layer = layers[li];
        layer.weight_density = densities[di];
        layer.input_density = 1.0;
        uint64_t seed = derive_seed(exp.seed, di, li);
        points[idx].sod =
            run_layer(EngineKind::kSod, layer, cfg, seed, /*force_weight_csc=*/true);
        if (want_dense) points[idx].dense = run_layer(EngineKind::kDense, layer, cfg, seed);
    });

    std::vector<CsvRow> rows;
    for (EngineKind engine : exp.engines) {
        for (size_t di = 0; di < densities.size(); ++di) {
            for (size_t li = 0; li < layers.size(); ++li) {
                const PointRuns& p = points[di * layers.size() + li];
                CsvRow row;
                row.experiment = exp.name;
                row.engine = engine_name(engine);
                row.layer = layer_label(layers[li]);
                switch (engine) {
                    case EngineKind::kSod: row.metrics = p.sod.metrics; break;
                    case EngineKind::kDense: row.metrics = p.dense.metrics; break;
                    default:
                        row.metrics = derive_baseline_metrics(p.sod, to_baseline(engine),
                                                              /*kernel=*/1, /*stride=*/1, cfg);
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

BenchResult run_benchmark(BenchModel model, const std::vector<EngineKind>& engines,
                          const SimConfig& cfg, uint64_t seed) {
    if (engines.empty()) throw Error("benchmark needs at least one engine");
    BenchResult result;
    result.suite = benchmark_suite(model);
    const auto& layers = result.suite.layers;
    const bool want_dense =
        std::find(engines.begin(), engines.end(), EngineKind::kDense) != engines.end();

    std::vector<std::pair<LayerRun, LayerRun>> runs(layers.size());
    parallel_for(layers.size(), [&](size_t li) {
        uint64_t layer_seed = derive_seed(seed, uint64_t(model), li);
        runs[li].first = run_layer(EngineKind::kSod, layers[li].shape, cfg, layer_seed);
        if (want_dense) {
            runs[li].second = run_layer(EngineKind::kDense, layers[li].shape, cfg, layer_seed);
        }
    });

    const double total_macs = double(result.suite.total_macs());
    for (EngineKind engine : engines) {
        MetricsPoint avg;
        double energy_sum = 0.0;
        for (size_t li = 0; li < layers.size(); ++li) {
            const BenchLayer& bl = layers[li];
            CsvRow row;
            row.experiment = result.suite.id;
            row.engine = engine_name(engine);
            row.layer = bl.name;
            switch (engine) {
                case EngineKind::kSod: row.metrics = runs[li].first.metrics; break;
                case EngineKind::kDense: row.metrics = runs[li].second.metrics; break;
                default:
                    row.metrics = derive_baseline_metrics(runs[li].first, to_baseline(engine),
                                                          bl.kernel, bl.stride, cfg);
            }
            const MetricsPoint& m = row.metrics;
            const double w = double(bl.shape.macs()) / total_macs;
            avg.density_w += w * m.density_w;
            avg.density_i += w * m.density_i;
            avg.cycles += m.cycles;
            avg.dram_bits += m.dram_bits;
            avg.sram_bits += m.sram_bits;
            avg.mapped_macs += m.mapped_macs;
            avg.effective_macs += m.effective_macs;
            avg.mapping_util += w * m.mapping_util;
            avg.effective_util += w * m.effective_util;
            avg.tpa_logic += w * m.tpa_logic;
            avg.tpa_total += w * m.tpa_total;
            avg.energy_eff += w * m.energy_eff;
            energy_sum += m.energy_j;
            result.rows.push_back(std::move(row));
        }
        avg.energy_j = energy_sum;
        CsvRow avg_row;
        avg_row.experiment = result.suite.id;
        avg_row.engine = engine_name(engine);
        avg_row.layer = "average";
        avg_row.metrics = avg;
        result.rows.push_back(std::move(avg_row));
    }

    for (EngineKind engine : engines) {
        if (engine == EngineKind::kSod || engine == EngineKind::kDense) continue;
        BenchAdvantage adv;
        adv.baseline = engine;
        for (size_t li = 0; li < layers.size(); ++li) {
            const BenchLayer& bl = layers[li];
            SodAdvantage a = sod_advantage(to_baseline(engine), bl.shape.weight_density,
                                           bl.kernel, bl.stride, cfg.baselines);
            const double w = double(bl.shape.macs()) / total_macs;
            adv.tpa += w * a.tpa;
            adv.energy_eff += w * a.energy_eff;
        }
        result.advantages.push_back(adv);
    }
    return result;
}

}  // namespace sod
