#include "jjsim/logic/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "jjsim/errors.hpp"
#include "jjsim/solver/dc.hpp"

namespace jjsim::logic {

using netlist::ElementKind;

std::optional<double> switching_threshold(const devices::NtronParams& ntron,
                                          double i_bias2) {
    const auto& pts = ntron.i_sw.points();
    if (pts.front().second <= i_bias2) return 0.0;
    for (std::size_t k = 1; k < pts.size(); ++k) {
        const auto& [x0, y0] = pts[k - 1];
        const auto& [x1, y1] = pts[k];
        if (y1 <= i_bias2) {
            if (y0 == y1) return x0;
            return x0 + (y0 - i_bias2) * (x1 - x0) / (y0 - y1);
        }
    }
    return std::nullopt;  // clamped tail stays above the bias
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        grid.push_back(lo * std::pow(hi / lo, t));
    }
    return grid;
}

std::string bits_of(const std::vector<bool>& inputs) {
    std::string s;
    for (bool b : inputs) s += b ? '1' : '0';
    return s;
}

struct StageEvaluator {
    GateKind stage;
    const devices::NtronParams& ntron;
    const GateModels& models;
    const LogicLevels& levels;
    std::shared_ptr<netlist::CardCache> cache;
    double threshold;  // switching threshold, or +inf when it never switches
    double v_low, v_high;

    /// Worst-case margin over all input combinations, with per-combination
    /// detail. Non-convergent rows poison the point with -inf.
    std::pair<double, std::vector<std::pair<std::string, double>>> evaluate(
        const GateBias& bias) const {
        const BuiltGate gate = build_tuning_stage(stage, models, bias, ntron, levels);
        netlist::ElaborationOptions opts;
        opts.card_cache = cache;
        netlist::Circuit circuit = netlist::elaborate(gate.ast, opts);

        int ntron_idx = -1;
        for (std::size_t i = 0; i < circuit.elements.size(); ++i) {
            if (circuit.elements[i].kind == ElementKind::Ntron) {
                ntron_idx = static_cast<int>(i);
                break;
            }
        }
        if (ntron_idx < 0) throw ContractError("tuning stage has no nTron");

        std::vector<std::size_t> sources;
        for (const auto& name : gate.input_sources) {
            sources.push_back(static_cast<std::size_t>(circuit.element_index(name)));
        }

        const std::size_t n = sources.size();
        std::vector<std::pair<std::string, double>> margins;
        double worst = std::numeric_limits<double>::infinity();

        for (std::size_t code = 0; code < (std::size_t{1} << n); ++code) {
            std::vector<bool> inputs;
            for (std::size_t k = 0; k < n; ++k) {
                const bool bit = (code >> (n - 1 - k)) & 1u;
                inputs.push_back(bit);
                circuit.elements[sources[k]].waveform =
                    netlist::SourceWaveform::dc(bit ? v_high : v_low);
            }
            const solver::Solution sol = solver::solve_dc(circuit);
            double margin = kNegInf;
            if (sol.converged) {
                const double i_g = std::abs(
                    sol.ntron_gate_currents[static_cast<std::size_t>(ntron_idx)]);
                margin = stage_must_switch(stage, inputs) ? i_g - threshold
                                                          : threshold - i_g;
            }
            worst = std::min(worst, margin);
            margins.emplace_back(bits_of(inputs), margin);
        }
        return {worst, margins};
    }
};

StageTuneResult tune_stage(GateKind stage, const StageEvaluator& eval,
                           const TuneSettings& settings, double i_bias2,
                           double v_bias) {
    const auto i_grid =
        log_grid(settings.i_bias1_min, settings.i_bias1_max, settings.points_per_axis);
    const auto rs_grid =
        log_grid(settings.r_s_min, settings.r_s_max, settings.points_per_axis);
    const bool needs_rp = stage == GateKind::Copy;
    const auto rp_grid =
        needs_rp ? log_grid(settings.r_p_min, settings.r_p_max, settings.points_per_axis)
                 : std::vector<double>{0.0};

    StageTuneResult result;
    result.stage = stage;
    result.worst_margin = kNegInf;

    for (double i_bias1 : i_grid) {
        for (double r_s : rs_grid) {
            for (double r_p : rp_grid) {
                GateBias bias;
                bias.i_bias1 = i_bias1;
                bias.i_bias2 = i_bias2;
                bias.v_bias = v_bias;
                bias.r_s = r_s;
                if (needs_rp) bias.r_p = r_p;

                const auto [worst, margins] = eval.evaluate(bias);
                if (worst > result.worst_margin) {
                    result.worst_margin = worst;
                    result.bias = bias;
                    result.combination_margins = margins;
                }
            }
        }
    }
    result.feasible = result.worst_margin >= settings.margin;
    return result;
}

nlohmann::ordered_json bias_json(const GateBias& b) {
    nlohmann::ordered_json entry;
    entry["i_bias1"] = b.i_bias1;
    entry["i_bias2"] = b.i_bias2;
    entry["v_bias"] = b.v_bias;
    entry["r_s"] = b.r_s;
    if (b.r_p) {
        entry["r_p"] = *b.r_p;
    } else {
        entry["r_p"] = nullptr;
    }
    return entry;
}

}  // namespace

TuneResult tune_gate(GateKind kind, const devices::JjfetParams& jjfet,
                     const devices::NtronParams& ntron, const GateModels& models,
                     const TuneSettings& settings, const LogicLevels& levels) {
    (void)jjfet;  // resolved again through the card path when stages elaborate
    if (!(settings.margin > 0.0)) throw Error("tuner margin must be > 0");
    levels.validate();

    TuneResult result;
    result.kind = kind;
    result.requested_margin = settings.margin;

    const double swing = levels.v_high - levels.v_low;
    const double i_bias2 =
        settings.i_bias2 ? *settings.i_bias2 : swing / ntron.r_channel;
    result.threshold_gate_current = switching_threshold(ntron, i_bias2);

    StageEvaluator eval{
        GateKind::Not,
        ntron,
        models,
        levels,
        std::make_shared<netlist::CardCache>(),
        result.threshold_gate_current.value_or(
            std::numeric_limits<double>::infinity()),
        levels.v_low,
        levels.v_high,
    };

    result.feasible = true;
    for (GateKind stage : tuned_stages(kind)) {
        eval.stage = stage;
        StageTuneResult stage_result =
            tune_stage(stage, eval, settings, i_bias2, levels.v_low);
        result.feasible = result.feasible && stage_result.feasible;
        result.biases[stage] = stage_result.bias;
        result.stages.push_back(std::move(stage_result));
    }
    return result;
}

std::string tune_result_to_json(const TuneResult& result, const std::string& banner) {
    nlohmann::ordered_json j;
    if (!banner.empty()) j["tool"] = banner;
    j["gate"] = to_string(result.kind);
    j["feasible"] = result.feasible;
    j["requested_margin_a"] = result.requested_margin;
    if (result.threshold_gate_current) {
        j["threshold_gate_current_a"] = *result.threshold_gate_current;
    } else {
        j["threshold_gate_current_a"] = nullptr;
    }

    nlohmann::ordered_json stages = nlohmann::ordered_json::array();
    for (const auto& s : result.stages) {
        nlohmann::ordered_json stage;
        stage["stage"] = to_string(s.stage);
        stage["feasible"] = s.feasible;
        stage["worst_margin_a"] = s.worst_margin;
        stage["bias"] = bias_json(s.bias);
        nlohmann::ordered_json margins;
        for (const auto& [bits, m] : s.combination_margins) margins[bits] = m;
        stage["combination_margins_a"] = std::move(margins);
        stages.push_back(std::move(stage));
    }
    j["stages"] = std::move(stages);

    nlohmann::ordered_json gates;
    for (const auto& [stage, bias] : result.biases) {
        gates[to_string(stage)] = bias_json(bias);
    }
    j["gates"] = std::move(gates);
    return j.dump(2) + "\n";
}

}  // namespace jjsim::logic
