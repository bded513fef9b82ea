#include <doctest.h>

#include <cmath>

#include "jjsim/devices/card.hpp"
#include "jjsim/errors.hpp"
#include "jjsim/logic/gates.hpp"
#include "jjsim/logic/levels.hpp"
#include "jjsim/logic/truth_table.hpp"
#include "jjsim/logic/tuner.hpp"
#include "jjsim/solver/dc.hpp"
#include "jjsim/solver/mna.hpp"
#include "testutil.hpp"

using namespace jjsim;
using namespace jjsim::logic;
using jjsim::netlist::Circuit;
using jjsim::netlist::ElementKind;

namespace {

devices::JjfetParams default_jjfet() {
    return devices::jjfet_from_card(
        devices::load_card(testutil::cards_dir() + "/jjfet_default.card"));
}

devices::NtronParams default_ntron() {
    return devices::ntron_from_card(
        devices::load_card(testutil::cards_dir() + "/ntron_default.card"));
}

GateModels default_models() {
    GateModels m;
    m.jjfet_card = testutil::cards_dir() + "/jjfet_default.card";
    m.ntron_card = testutil::cards_dir() + "/ntron_default.card";
    return m;
}

GateModels synth_models(const std::string& jjfet_card_name) {
    GateModels m;
    m.jjfet_card = testutil::fixture(jjfet_card_name);
    m.ntron_card = testutil::cards_dir() + "/ntron_default.card";
    return m;
}

Circuit elaborate_gate(const BuiltGate& gate) {
    netlist::ElaborationOptions opts;
    opts.card_search_paths = {testutil::cards_dir(), testutil::fixtures_dir()};
    return netlist::elaborate(gate.ast, opts);
}

TruthTableReport run_gate_table(GateKind kind, const BuiltGate& gate,
                                const std::map<std::string, bool>& pinned = {},
                                const BoolFunction& expected_override = nullptr,
                                const std::vector<std::string>& free_inputs = {}) {
    const Circuit circuit = elaborate_gate(gate);
    const BoolFunction expected =
        expected_override
            ? expected_override
            : BoolFunction([kind](const std::vector<bool>& in) {
                  return gate_truth(kind, in);
              });
    const auto& inputs = free_inputs.empty() ? gate.inputs : free_inputs;
    return truth_table(circuit, inputs, gate.output, {}, expected,
                       to_string(kind), pinned);
}

}  // namespace

TEST_CASE("logic level classification") {
    CHECK(classify_level(-0.7) == LogicValue::Zero);
    CHECK(classify_level(0.0) == LogicValue::One);
    CHECK(classify_level(-0.35) == LogicValue::X);
    CHECK(classify_level(-0.5) == LogicValue::Zero);   // boundary inclusive
    CHECK(classify_level(-0.2) == LogicValue::One);    // boundary inclusive
    LogicLevels bad;
    bad.low_max = 0.1;
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("gate truth functions and stage polarity") {
    CHECK(gate_truth(GateKind::Nand2, {true, true}) == false);
    CHECK(gate_truth(GateKind::Nor2, {false, false}) == true);
    CHECK(gate_truth(GateKind::Maj3, {true, false, true}) == true);
    CHECK(gate_truth(GateKind::Xor2, {true, true}) == false);
    // MAJ3's series core is active-low: it switches for the minority rows
    CHECK(stage_must_switch(GateKind::Maj3, {false, false, true}) == true);
    CHECK(stage_must_switch(GateKind::Maj3, {true, true, false}) == false);
    CHECK_THROWS_AS(stage_must_switch(GateKind::Xor2, {true, false}), ContractError);
}

TEST_CASE("gate bias invariants are enforced") {
    const auto ntron = default_ntron();
    BiasLibrary biases;
    GateBias b;
    b.i_bias1 = 40e-6;
    b.r_s = 50e3;
    b.i_bias2 = 30e-6;  // violates the 0.7 V swing with the 20 kOhm card
    biases[GateKind::Not] = b;
    CHECK_THROWS_AS(build_gate(GateKind::Not, default_models(), biases, ntron), Error);

    b.i_bias2 = 35e-6;
    biases[GateKind::Not] = b;
    CHECK_NOTHROW(build_gate(GateKind::Not, default_models(), biases, ntron));

    biases[GateKind::Copy] = b;  // no r_p
    CHECK_THROWS_AS(build_gate(GateKind::Copy, default_models(), biases, ntron), Error);
}

TEST_CASE("NOT gate builds with the expected element inventory") {
    const auto ntron = default_ntron();
    BiasLibrary biases;
    biases[GateKind::Not] = {40e-6, 35e-6, -0.7, 50e3, std::nullopt};
    const BuiltGate gate = build_gate(GateKind::Not, default_models(), biases, ntron);
    const Circuit c = elaborate_gate(gate);

    auto count_in_gate = [&](ElementKind kind) {
        int n = 0;
        for (const auto& el : c.elements) {
            if (el.name.rfind("XG.", 0) == 0 && el.kind == kind) ++n;
        }
        return n;
    };
    CHECK(count_in_gate(ElementKind::Jjfet) == 1);
    CHECK(count_in_gate(ElementKind::Ntron) == 1);
    CHECK(count_in_gate(ElementKind::Resistor) == 1);
    CHECK(count_in_gate(ElementKind::CurrentSource) == 2);
    CHECK(count_in_gate(ElementKind::VoltageSource) == 1);
}

TEST_CASE("COPY gate carries the extra shunt resistor") {
    const auto ntron = default_ntron();
    BiasLibrary biases;
    biases[GateKind::Copy] = {20e-6, 35e-6, -0.7, 1e3, 30e3};
    const Circuit c =
        elaborate_gate(build_gate(GateKind::Copy, default_models(), biases, ntron));
    CHECK(c.element_index("XG.RP") >= 0);
    CHECK(c.element_index("XG.RS") >= 0);
    CHECK(c.count_kind(ElementKind::Jjfet) == 1);
}

TEST_CASE("NAND2 shares a series path, NOR2 parallels the shunts") {
    const auto ntron = default_ntron();
    BiasLibrary biases;
    biases[GateKind::Nand2] = {40e-6, 35e-6, -0.7, 50e3, std::nullopt};
    biases[GateKind::Nor2] = {40e-6, 35e-6, -0.7, 50e3, std::nullopt};

    const Circuit nand2 =
        elaborate_gate(build_gate(GateKind::Nand2, default_models(), biases, ntron));
    const int j1 = nand2.element_index("XG.J1");
    const int j2 = nand2.element_index("XG.J2");
    REQUIRE(j1 >= 0);
    REQUIRE(j2 >= 0);
    // J1's source node is J2's drain node: a series chain
    CHECK(nand2.elements[static_cast<std::size_t>(j1)].nodes[1] ==
          nand2.elements[static_cast<std::size_t>(j2)].nodes[0]);

    const Circuit nor2 =
        elaborate_gate(build_gate(GateKind::Nor2, default_models(), biases, ntron));
    const int p1 = nor2.element_index("XG.J1");
    const int p2 = nor2.element_index("XG.J2");
    CHECK(nor2.elements[static_cast<std::size_t>(p1)].nodes[0] ==
          nor2.elements[static_cast<std::size_t>(p2)].nodes[0]);
    CHECK(nor2.elements[static_cast<std::size_t>(p1)].nodes[1] ==
          nor2.elements[static_cast<std::size_t>(p2)].nodes[1]);
}

TEST_CASE("MAJ3 elaborates to two nTrons and four JJFETs") {
    const auto ntron = default_ntron();
    BiasLibrary biases;
    biases[GateKind::Maj3] = {24e-6, 35e-6, -0.7, 100e3, std::nullopt};
    biases[GateKind::Not] = {40e-6, 35e-6, -0.7, 50e3, std::nullopt};
    const Circuit c =
        elaborate_gate(build_gate(GateKind::Maj3, default_models(), biases, ntron));
    CHECK(c.count_kind(ElementKind::Ntron) == 2);
    CHECK(c.count_kind(ElementKind::Jjfet) == 4);
}

TEST_CASE("composite gates demand their primitive biases") {
    const auto ntron = default_ntron();
    BiasLibrary biases;
    biases[GateKind::Nand2] = {40e-6, 35e-6, -0.7, 50e3, std::nullopt};
    biases[GateKind::Nor2] = {40e-6, 35e-6, -0.7, 50e3, std::nullopt};
    // NOT bias missing
    CHECK_THROWS_AS(build_gate(GateKind::Xor2, default_models(), biases, ntron), Error);
    CHECK_THROWS_AS(
        build_tuning_stage(GateKind::Xor2, default_models(),
                           biases[GateKind::Nand2], ntron),
        ContractError);
}

TEST_CASE("switching threshold inverts the suppression table") {
    const auto ntron = default_ntron();
    CHECK(switching_threshold(ntron, 35e-6) == 10.3e-6);
    CHECK(switching_threshold(ntron, 70e-6) == 0.0);      // switches unaided
    CHECK_FALSE(switching_threshold(ntron, 1e-6).has_value());  // never switches
    CHECK(switching_threshold(ntron, 40e-6) == doctest::Approx(8e-6));
}

TEST_CASE("bias library JSON round-trips") {
    BiasLibrary biases;
    biases[GateKind::Not] = {40e-6, 35e-6, -0.7, 50e3, std::nullopt};
    biases[GateKind::Copy] = {20e-6, 35e-6, -0.7, 1e3, 30e3};
    const BiasLibrary again = bias_library_from_json(bias_library_to_json(biases));
    REQUIRE(again.size() == 2);
    CHECK(again.at(GateKind::Not).i_bias1 == 40e-6);
    CHECK(again.at(GateKind::Not).r_s == 50e3);
    CHECK_FALSE(again.at(GateKind::Not).r_p.has_value());
    CHECK(again.at(GateKind::Copy).r_p == 30e3);
    CHECK_THROWS_AS(bias_library_from_json("{}"), Error);
    CHECK_THROWS_AS(bias_library_from_json("not json"), Error);
}

TEST_CASE("tuner finds the same NOT bias as an exhaustive closed-form oracle") {
    // Synthetic high-contrast card: constant 1k/50k tables with the critical
    // current scaled so the sub-gap state is reachable at gate-scale currents.
    const auto jj = devices::jjfet_from_card(
        devices::load_card(testutil::fixture("jjfet_synth.card")));
    const auto nt = default_ntron();

    TuneSettings settings;
    settings.margin = 0.5e-6;
    const TuneResult tuned = tune_gate(GateKind::Not, jj, nt,
                                       synth_models("jjfet_synth.card"), settings);
    REQUIRE(tuned.feasible);
    REQUIRE(tuned.threshold_gate_current == 10.3e-6);

    // Independent oracle: the NOT stage is a current divider from the bias
    // node into (shunt JJFET) and (R_S + gate floor), both returning to the
    // v_bias rail. States resolve exactly like the relaxation: sub-gap first
    // if self-consistent, else normal if self-consistent, else no fixed point.
    const double floor_ohm = solver::kSuperconductingFloorOhm;
    const double thr = 1.03e-5;
    auto gate_current = [&](double i1, double rs, bool input_high) {
        const double v_gt = input_high ? 0.7 : 0.0;
        const double ic = devices::jjfet_critical_current(v_gt, jj);
        auto branch = [&](double rj) {
            const double denom = rj + rs + floor_ohm;
            return std::pair{i1 * (rs + floor_ohm) / denom,  // through the JJFET
                             i1 * rj / denom};               // into the gate
        };
        const auto [id_sub, ig_sub] = branch(jj.r_sg.eval(v_gt));
        if (std::abs(id_sub) < ic) return ig_sub;
        const auto [id_norm, ig_norm] = branch(jj.r_n.eval(v_gt));
        if (std::abs(id_norm) >= ic) return ig_norm;
        return std::numeric_limits<double>::quiet_NaN();
    };

    double best_margin = -std::numeric_limits<double>::infinity();
    double best_i1 = 0.0;
    double best_rs = 0.0;
    for (int i = 0; i < 25; ++i) {
        const double i1 = 1e-6 * std::pow(100e-6 / 1e-6, i / 24.0);
        for (int r = 0; r < 25; ++r) {
            const double rs = 100.0 * std::pow(1e6 / 100.0, r / 24.0);
            const double ig_low = gate_current(i1, rs, false);   // must switch
            const double ig_high = gate_current(i1, rs, true);   // must not
            double margin = std::min(ig_low - thr, thr - ig_high);
            if (std::isnan(ig_low) || std::isnan(ig_high)) {
                margin = -std::numeric_limits<double>::infinity();
            }
            if (margin > best_margin) {
                best_margin = margin;
                best_i1 = i1;
                best_rs = rs;
            }
        }
    }
    REQUIRE(best_margin >= settings.margin);  // feasibility per the oracle

    const StageTuneResult& stage = tuned.stages.front();
    CHECK(stage.bias.i_bias1 == best_i1);
    CHECK(stage.bias.r_s == best_rs);
    CHECK(stage.worst_margin == doctest::Approx(best_margin).epsilon(1e-6));

    // close the loop: the tuned bias must verify
    const BuiltGate gate = build_gate(GateKind::Not, synth_models("jjfet_synth.card"),
                                      tuned.biases, nt);
    CHECK(run_gate_table(GateKind::Not, gate).overall_pass);
}

TEST_CASE("contrast-free card is reported infeasible with per-combination margins") {
    const auto jj = devices::jjfet_from_card(
        devices::load_card(testutil::fixture("jjfet_flat.card")));
    const auto nt = default_ntron();
    const TuneResult tuned =
        tune_gate(GateKind::Maj3, jj, nt, synth_models("jjfet_flat.card"));
    CHECK_FALSE(tuned.feasible);
    const auto& core = tuned.stages.front();
    CHECK_FALSE(core.feasible);
    CHECK(core.combination_margins.size() == 8);  // best-found margins per row
    const std::string json = tune_result_to_json(tuned);
    CHECK(json.find("\"feasible\": false") != std::string::npos);
}

TEST_CASE("tuned NAND2 verifies against its truth table") {
    const TuneResult tuned = tune_gate(GateKind::Nand2, default_jjfet(),
                                       default_ntron(), default_models());
    REQUIRE(tuned.feasible);
    const BuiltGate gate =
        build_gate(GateKind::Nand2, default_models(), tuned.biases, default_ntron());
    const TruthTableReport report = run_gate_table(GateKind::Nand2, gate);
    CHECK(report.overall_pass);
    REQUIRE(report.rows.size() == 4);
    CHECK(report.rows[3].level == LogicValue::Zero);  // (1,1) -> 0
}

TEST_CASE("tuner output is deterministic") {
    const auto a = tune_result_to_json(
        tune_gate(GateKind::Not, default_jjfet(), default_ntron(), default_models()));
    const auto b = tune_result_to_json(
        tune_gate(GateKind::Not, default_jjfet(), default_ntron(), default_models()));
    CHECK(a == b);
}

TEST_CASE("De Morgan cross-check at the logic level") {
    const auto nt = default_ntron();
    const TuneResult nand_t =
        tune_gate(GateKind::Nand2, default_jjfet(), nt, default_models());
    const TuneResult nor_t =
        tune_gate(GateKind::Nor2, default_jjfet(), nt, default_models());
    REQUIRE(nand_t.feasible);
    REQUIRE(nor_t.feasible);
    const auto nand_rows =
        run_gate_table(GateKind::Nand2,
                       build_gate(GateKind::Nand2, default_models(), nand_t.biases, nt))
            .rows;
    const auto nor_rows =
        run_gate_table(GateKind::Nor2,
                       build_gate(GateKind::Nor2, default_models(), nor_t.biases, nt))
            .rows;
    for (const auto& row : nand_rows) {
        CHECK((row.level == LogicValue::One) == !(row.inputs[0] && row.inputs[1]));
    }
    for (const auto& row : nor_rows) {
        CHECK((row.level == LogicValue::One) == !(row.inputs[0] || row.inputs[1]));
    }
}

TEST_CASE("MAJ3 is self-dual and reconfigures to AND/OR") {
    const auto nt = default_ntron();
    const TuneResult tuned =
        tune_gate(GateKind::Maj3, default_jjfet(), nt, default_models());
    REQUIRE(tuned.feasible);
    const BuiltGate gate =
        build_gate(GateKind::Maj3, default_models(), tuned.biases, nt);
    const TruthTableReport table = run_gate_table(GateKind::Maj3, gate);
    REQUIRE(table.overall_pass);
    REQUIRE(table.rows.size() == 8);

    SUBCASE("self-duality: MAJ3(!a,!b,!c) = !MAJ3(a,b,c)") {
        for (std::size_t code = 0; code < 8; ++code) {
            const auto& row = table.rows[code];
            const auto& dual = table.rows[7 - code];  // complemented inputs
            REQUIRE(row.level != LogicValue::X);
            REQUIRE(dual.level != LogicValue::X);
            CHECK((row.level == LogicValue::One) == (dual.level == LogicValue::Zero));
        }
    }

    SUBCASE("pinning an input yields OR (high) or AND (low)") {
        CHECK(maj3_reconfigure(2, true)({true, false}) == true);
        CHECK(maj3_reconfigure(2, false)({true, false}) == false);
        CHECK_THROWS_AS(maj3_reconfigure(3, true), ContractError);

        const std::vector<std::string> free_inputs{"a", "b"};
        const TruthTableReport as_or =
            run_gate_table(GateKind::Maj3, gate, {{"c", true}},
                           maj3_reconfigure(2, true), free_inputs);
        CHECK(as_or.overall_pass);
        REQUIRE(as_or.rows.size() == 4);
        const TruthTableReport as_and =
            run_gate_table(GateKind::Maj3, gate, {{"c", false}},
                           maj3_reconfigure(2, false), free_inputs);
        CHECK(as_and.overall_pass);

        // symmetry: pinning input 0 instead gives the identical 4-row table
        const TruthTableReport as_or0 =
            run_gate_table(GateKind::Maj3, gate, {{"a", true}},
                           maj3_reconfigure(0, true), {"b", "c"});
        REQUIRE(as_or0.overall_pass);
        for (std::size_t r = 0; r < 4; ++r) {
            CHECK(as_or0.rows[r].output_voltage ==
                  doctest::Approx(as_or.rows[r].output_voltage).epsilon(1e-9));
            CHECK(as_or0.rows[r].level == as_or.rows[r].level);
        }
    }
}

TEST_CASE("truth table flags undriven inputs and missing nodes") {
    const Circuit c = testutil::elaborate_text("R1 a 0 1k\nI1 0 a DC 1m\n.op\n");
    const auto ident = [](const std::vector<bool>& in) { return in[0]; };
    CHECK_THROWS_AS(truth_table(c, {"a"}, "a", {}, ident), Error);     // no V source
    CHECK_THROWS_AS(truth_table(c, {"ghost"}, "a", {}, ident), Error);
    const Circuit d = testutil::elaborate_text("V1 a 0 DC -0.7\nR1 a out 1k\n"
                                               "R2 out 0 1meg\n.op\n");
    CHECK_THROWS_AS(truth_table(d, {"a"}, "ghost", {}, ident), Error);
}
