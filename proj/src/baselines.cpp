#include "sod/baselines.hpp"

#include <algorithm>

namespace sod {

double BaselineCurve::eval(double density) const {
    if (density <= 0.0) throw Error("baseline curves are defined for density > 0");
    if (anchors.empty()) throw Error("baseline curve has no anchors");
    if (rule == CurveRule::kReciprocal) {
        if (anchors.size() != 2) throw Error("reciprocal curve needs exactly two anchors");
        const auto& a = anchors[0];
        const auto& b = anchors[1];
        double alpha = (a.ratio - b.ratio) / (1.0 / a.density - 1.0 / b.density);
        double beta = a.ratio - alpha / a.density;
        return alpha / density + beta;
    }
    if (density <= anchors.front().density) return anchors.front().ratio;
    if (density >= anchors.back().density) return anchors.back().ratio;
    for (size_t i = 0; i + 1 < anchors.size(); ++i) {
        const auto& lo = anchors[i];
        const auto& hi = anchors[i + 1];
        if (density <= hi.density) {
            double t = (density - lo.density) / (hi.density - lo.density);
            return lo.ratio + t * (hi.ratio - lo.ratio);
        }
    }
    return anchors.back().ratio;
}

BaselineSet default_baselines() {
    BaselineSet set;
    set.ese_tpa = {CurveRule::kReciprocal, {{0.1, 1.8}, {0.2, 1.0}}};
    set.ese_eff = {CurveRule::kReciprocal, {{0.1, 2.4}, {0.33, 1.4}}};
    set.scnn_tpa = {CurveRule::kPiecewiseLinear, {{0.3, 3.1}, {0.7, 5.8}}};
    set.scnn_eff = {CurveRule::kPiecewiseLinear, {{0.3, 1.0}, {0.7, 1.1}}};
    set.snap_tpa = {CurveRule::kPiecewiseLinear, {{0.1, 1.0}, {0.3, 2.2}, {0.7, 4.2}}};
    set.snap_eff = {CurveRule::kPiecewiseLinear, {{0.3, 0.9}, {0.7, 1.1}}};
    return set;
}

EseRatios ese_model(double density, const BaselineSet& set) {
    return {set.ese_tpa.eval(density), set.ese_eff.eval(density)};
}

SparseCnnRatios scnn_model(double density, const BaselineSet& set) {
    return {set.scnn_tpa.eval(density), set.scnn_eff.eval(density)};
}

SparseCnnRatios snap_model(double density, const BaselineSet& set) {
    return {set.snap_tpa.eval(density), set.snap_eff.eval(density)};
}

SodAdvantage sod_advantage(BaselineKind kind, double weight_density, int64_t kernel,
                           int64_t stride, const BaselineSet& set) {
    SodAdvantage adv;
    switch (kind) {
        case BaselineKind::kEse: {
            EseRatios r = ese_model(weight_density, set);
            adv.tpa = 1.0 / r.tpa_ese_over_sod;
            adv.energy_eff = r.eff_sod_over_ese;
            return adv;
        }
        case BaselineKind::kScnn: {
            SparseCnnRatios r = scnn_model(weight_density, set);
            adv.tpa = r.tpa_sod_over_baseline;
            adv.energy_eff = r.eff_sod_over_baseline;
            const auto& c = set.scnn_bench;
            if (stride >= c.stride_threshold) {
                adv.tpa *= c.reference_util / c.congested_util;
            } else if (kernel > 1) {
                double area = double(kernel) * double(kernel);
                adv.tpa *= 1.0 + c.kernel_tpa_coeff * (area - 1.0);
                adv.energy_eff *= 1.0 + c.kernel_eff_coeff * (area - 1.0);
            }
            return adv;
        }
        case BaselineKind::kSnap: {
            SparseCnnRatios r = snap_model(weight_density, set);
            adv.tpa = r.tpa_sod_over_baseline;
            adv.energy_eff = r.eff_sod_over_baseline;
            return adv;
        }
    }
    throw Error("unknown baseline kind");
}

}  // namespace sod
