#include "sod/bench.hpp"

#include <sstream>

namespace sod {

const char* bench_model_id(BenchModel model) {
    switch (model) {
        case BenchModel::kAlexnetConv: return "alexnet-conv";
        case BenchModel::kVgg16Conv: return "vgg16-conv";
        case BenchModel::kBertSquad: return "bert-squad";
        case BenchModel::kBertMnli: return "bert-mnli";
    }
    return "?";
}

bool parse_bench_model(const std::string& id, BenchModel* out) {
    for (BenchModel m : {BenchModel::kAlexnetConv, BenchModel::kVgg16Conv,
                         BenchModel::kBertSquad, BenchModel::kBertMnli}) {
        if (id == bench_model_id(m)) {
            *out = m;
            return true;
        }
    }
    return false;
}

uint64_t BenchmarkSuite::total_macs() const {
    uint64_t total = 0;
    for (const auto& l : layers) total += l.shape.macs();
    return total;
}

DensityRange quoted_density_range(BenchModel model) {
    switch (model) {
        case BenchModel::kAlexnetConv: return {0.34, 0.84, 0.38, 1.0};
        case BenchModel::kVgg16Conv: return {0.22, 0.57, 0.31, 1.0};
        case BenchModel::kBertSquad: return {0.04, 0.50, 1.0, 1.0};
        case BenchModel::kBertMnli: return {0.01, 0.22, 1.0, 1.0};
    }
    throw Error("unknown benchmark model");
}

namespace {

BenchLayer conv_layer(const std::string& name, ConvShape conv, double dw, double di) {
    BenchLayer l;
    l.name = name;
    l.shape = lower_conv_to_matmul(conv, dw, di);
    l.kernel = conv.kernel;
    l.stride = conv.stride;
    return l;
}

BenchmarkSuite alexnet_suite() {
    BenchmarkSuite s;
    s.model = BenchModel::kAlexnetConv;
    s.id = bench_model_id(s.model);
    // Grouped convolutions fold into a single GEMM with K = in_ch/groups *
    // k*k, which keeps the per-layer MAC counts.
    s.layers = {
        conv_layer("conv1", {3, 96, 227, 227, 11, 4, 0, 1}, 0.84, 1.00),
        conv_layer("conv2", {96, 256, 27, 27, 5, 1, 2, 2}, 0.74, 0.88),
        conv_layer("conv3", {256, 384, 13, 13, 3, 1, 1, 1}, 0.45, 0.65),
        conv_layer("conv4", {384, 384, 13, 13, 3, 1, 1, 2}, 0.38, 0.55),
        conv_layer("conv5", {384, 256, 13, 13, 3, 1, 1, 2}, 0.34, 0.38),
    };
    return s;
}

BenchmarkSuite vgg16_suite() {
    BenchmarkSuite s;
    s.model = BenchModel::kVgg16Conv;
    s.id = bench_model_id(s.model);
    struct Row {
        const char* name;
        int64_t in_ch, out_ch, size;
        double dw, di;
    };
    const Row rows[] = {
        {"conv1_1", 3, 64, 224, 0.57, 1.00},   {"conv1_2", 64, 64, 224, 0.30, 0.80},
        {"conv2_1", 64, 128, 112, 0.33, 0.72}, {"conv2_2", 128, 128, 112, 0.28, 0.66},
        {"conv3_1", 128, 256, 56, 0.35, 0.70}, {"conv3_2", 256, 256, 56, 0.30, 0.62},
        {"conv3_3", 256, 256, 56, 0.32, 0.58}, {"conv4_1", 256, 512, 28, 0.38, 0.65},
        {"conv4_2", 512, 512, 28, 0.33, 0.55}, {"conv4_3", 512, 512, 28, 0.30, 0.50},
        {"conv5_1", 512, 512, 14, 0.40, 0.45}, {"conv5_2", 512, 512, 14, 0.35, 0.38},
        {"conv5_3", 512, 512, 14, 0.22, 0.31},
    };
    for (const Row& r : rows) {
        s.layers.push_back(
            conv_layer(r.name, {r.in_ch, r.out_ch, r.size, r.size, 3, 1, 1, 1}, r.dw, r.di));
    }
    return s;
}

// Movement-pruned BERT keeps the early encoders dense-ish and prunes the
// later ones hard, feed-forward blocks hardest.
BenchmarkSuite bert_suite(BenchModel model) {
    BenchmarkSuite s;
    s.model = model;
    s.id = bench_model_id(model);
    const int64_t hidden = 768, ffn = 3072;
    const int64_t seq = model == BenchModel::kBertSquad ? 384 : 128;
    const char* names[] = {"q", "k", "v", "o", "ff1", "ff2"};

    for (int enc = 0; enc < 12; ++enc) {
        for (int li = 0; li < 6; ++li) {
            const bool ff = li >= 4;
            BenchLayer l;
            l.name = "enc" + std::to_string(enc) + "." + names[li];
            l.shape.m = seq;
            l.shape.k = li == 5 ? ffn : hidden;
            l.shape.n = li == 4 ? ffn : hidden;
            l.shape.input_density = 1.0;

            double dw;
            if (model == BenchModel::kBertSquad) {
                // Late-encoder FF blocks and the last projections prune to
                // the 0.04 floor; the rest stay near the 0.5 ceiling.
                const double hi[] = {0.50, 0.48, 0.49, 0.47};
                bool lo = (ff && enc >= 6) || (!ff && li < 3 && enc >= 9) ||
                          (li == 3 && enc >= 8);
                dw = lo ? (ff ? 0.04 : 0.045) : hi[(enc + li) % 4];
            } else {
                dw = ff ? 0.16 : 0.12;
                if (enc == 0 && li == 3) dw = 0.01;
                if (enc == 11 && li == 0) dw = 0.22;
            }
            l.shape.weight_density = dw;
            s.layers.push_back(l);
        }
    }
    return s;
}

}  // namespace

BenchmarkSuite benchmark_suite(BenchModel model) {
    BenchmarkSuite s;
    switch (model) {
        case BenchModel::kAlexnetConv: s = alexnet_suite(); break;
        case BenchModel::kVgg16Conv: s = vgg16_suite(); break;
        case BenchModel::kBertSquad:
        case BenchModel::kBertMnli: s = bert_suite(model); break;
    }
    validate(s);
    return s;
}

void validate(const BenchmarkSuite& suite) {
    if (suite.layers.empty()) throw Error("benchmark suite has no layers");
    DensityRange range = quoted_density_range(suite.model);
    for (const auto& l : suite.layers) {
        validate(l.shape);
        if (l.shape.weight_density < range.w_min || l.shape.weight_density > range.w_max ||
            l.shape.input_density < range.i_min || l.shape.input_density > range.i_max) {
            throw Error(suite.id + " layer " + l.name + " density outside the quoted range");
        }
    }
}

std::string suite_table(const BenchmarkSuite& suite) {
    std::ostringstream os;
    os << "# " << suite.id << ": layer M K N kernel stride weight_density input_density\n";
    for (const auto& l : suite.layers) {
        os << l.name << '\t' << l.shape.m << '\t' << l.shape.k << '\t' << l.shape.n << '\t'
           << l.kernel << '\t' << l.stride << '\t' << l.shape.weight_density << '\t'
           << l.shape.input_density << '\n';
    }
    return os.str();
}

}  // namespace sod
