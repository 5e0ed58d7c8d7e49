#pragma once

#include <string>
#include <vector>

#include "sod/memsys.hpp"

namespace sod {

enum class BenchModel { kAlexnetConv, kVgg16Conv, kBertSquad, kBertMnli };

const char* bench_model_id(BenchModel model);
bool parse_bench_model(const std::string& id, BenchModel* out);

struct BenchLayer {
    std::string name;
    LayerShape shape;
    int64_t kernel = 1;  // spatial kernel edge, 1 for plain matmul
    int64_t stride = 1;
};

struct BenchmarkSuite {
    BenchModel model = BenchModel::kAlexnetConv;
    std::string id;
    std::vector<BenchLayer> layers;

    uint64_t total_macs() const;
};

// Published density envelopes the suite tables must stay inside.
struct DensityRange {
    double w_min = 0.0, w_max = 1.0;
    double i_min = 0.0, i_max = 1.0;
};

DensityRange quoted_density_range(BenchModel model);

// Deterministic suite tables: conv layers lowered through im2col shapes,
// BERT as the 12-encoder projection/feed-forward matmul set. Per-layer
// densities are fixed calibrated values inside the quoted ranges.
BenchmarkSuite benchmark_suite(BenchModel model);

void validate(const BenchmarkSuite& suite);

// Tab-separated table as shipped under data/bench/.
std::string suite_table(const BenchmarkSuite& suite);

}  // namespace sod
