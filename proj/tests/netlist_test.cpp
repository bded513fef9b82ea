#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "jjsim/errors.hpp"
#include "jjsim/netlist/circuit.hpp"
#include "jjsim/netlist/parser.hpp"
#include "jjsim/netlist/printer.hpp"
#include "testutil.hpp"

using namespace jjsim;
using namespace jjsim::netlist;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("SI number suffixes") {
    CHECK(parse_si_number("1k") == 1e3);
    CHECK(parse_si_number("10.3u") == doctest::Approx(10.3e-6));
    CHECK(parse_si_number("5meg") == 5e6);
    CHECK(parse_si_number("5MEG") == 5e6);
    CHECK(parse_si_number("5Meg") == 5e6);
    CHECK(parse_si_number("5m") == 5e-3);
    CHECK(parse_si_number("5M") == 5e-3);  // lone m is always milli
    CHECK(parse_si_number("2p") == 2e-12);
    CHECK(parse_si_number("3N") == 3.0 * 1e-9);  // suffix scaling, ulp-exact form
    CHECK(parse_si_number("-1.5e-3") == -1.5e-3);
    CHECK(parse_si_number("+2.5") == 2.5);
    CHECK_THROWS_AS(parse_si_number("abc"), ParseError);
    CHECK_THROWS_AS(parse_si_number("1x"), ParseError);
    CHECK_THROWS_AS(parse_si_number("1me"), ParseError);
    CHECK_THROWS_AS(parse_si_number(""), ParseError);
}

TEST_CASE("smallest netlist parses") {
    const NetlistAst ast = parse("R1 a 0 1e3\nI1 0 a DC 1m\n.op\n");
    REQUIRE(ast.elements.size() == 2);
    CHECK(ast.elements[0].kind == ElementKind::Resistor);
    CHECK(ast.elements[0].nodes == std::vector<std::string>{"a", "0"});
    CHECK(ast.elements[0].value == 1e3);
    CHECK(ast.elements[1].kind == ElementKind::CurrentSource);
    CHECK(ast.analysis.kind == AnalysisSpec::Kind::Op);
}

TEST_CASE("subcircuit definition and instantiation parse structurally") {
    const char* text =
        ".model M JJFET card=\"jjfet_default.card\"\n"
        ".subckt NOT in out\n"
        "  R1 in out 1k\n"
        ".ends\n"
        "XG1 n1 n2 NOT\n";
    const NetlistAst ast = parse(text);
    REQUIRE(ast.subckts.size() == 1);
    CHECK(ast.subckts[0].name == "NOT");
    CHECK(ast.subckts[0].ports == std::vector<std::string>{"in", "out"});
    REQUIRE(ast.elements.size() == 1);
    CHECK(ast.elements[0].kind == ElementKind::Instance);
    CHECK(ast.elements[0].model == "NOT");
}

TEST_CASE("parse errors carry line numbers") {
    try {
        parse("J1 d 0 g\n");  // missing model name
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
    }
    try {
        parse("R1 a 0 1k\nQ1 a b c\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("unknown element kind") != std::string::npos);
    }
    CHECK_THROWS_AS(parse("R1 a 0 1k\nR1 b 0 2k\n"), ParseError);   // duplicate
    CHECK_THROWS_AS(parse("J1 d s g NOMODEL\n"), ParseError);       // dangling model
    CHECK_THROWS_AS(parse("R1 a 0 0\n"), ParseError);               // R <= 0
    CHECK_THROWS_AS(parse(".subckt A p\n.subckt B q\n.ends\n.ends\n"), ParseError);
    CHECK_THROWS_AS(parse(".subckt A p\nR1 p 0 1k\n"), ParseError);  // unclosed
    CHECK_THROWS_AS(parse(".subckt A p\nR1 p 0 1k\n.ends B\n"), ParseError);
    CHECK_NOTHROW(parse(".subckt A p\nR1 p 0 1k\n.ends A\n"));
    CHECK_THROWS_AS(parse("V1 a 0 PULSE(0 1 0 0 1n 1n 10n)\n"), ParseError);  // rise 0
    CHECK_THROWS_AS(parse("+ R1 a 0 1k\n"), ParseError);  // dangling continuation
    CHECK_THROWS_AS(parse(".tran 1n\n"), ParseError);     // missing stop
}

TEST_CASE("comments, continuations and case-insensitive keywords") {
    const char* text =
        "* full-line comment\n"
        "# another comment\n"
        "v1 a 0 dc 1.5   # trailing comment\n"
        "i1 0 a pulse(0 1m 0\n"
        "+ 1n 1n 5n\n"
        "+ 20n)\n"
        ".OP\n"
        ".PRINT V(a) I(v1)\n";
    const NetlistAst ast = parse(text);
    REQUIRE(ast.elements.size() == 2);
    CHECK(ast.elements[0].waveform->dc_value == 1.5);
    CHECK(ast.elements[1].waveform->kind == SourceWaveform::Kind::Pulse);
    CHECK(ast.elements[1].waveform->pulse.period == 20e-9);
    CHECK(ast.analysis.kind == AnalysisSpec::Kind::Op);
    REQUIRE(ast.probes.size() == 2);
    CHECK(ast.probes[0].label() == "v(a)");
    CHECK(ast.probes[1].label() == "i(v1)");
    // node names stay case-sensitive
    CHECK(ast.elements[0].nodes[0] == "a");
}

TEST_CASE("pulse waveform evaluation") {
    SourceWaveform w;
    w.kind = SourceWaveform::Kind::Pulse;
    w.pulse = {-0.7, 0.0, 20e-9, 1e-9, 1e-9, 29e-9, 100e-9};
    CHECK(w.value_at(0.0) == -0.7);
    CHECK(w.value_at(10e-9) == -0.7);
    CHECK(w.value_at(20.5e-9) == doctest::Approx(-0.35));
    CHECK(w.value_at(22e-9) == 0.0);  // plateau interior is exact
    CHECK(w.value_at(49e-9) == 0.0);
    CHECK(w.value_at(50.5e-9) == doctest::Approx(-0.35));
    CHECK(w.value_at(60e-9) == -0.7);
    CHECK(w.value_at(130e-9) == 0.0);  // second period
}

TEST_CASE("printer round-trips the fixture corpus") {
    namespace fs = std::filesystem;
    int count = 0;
    for (const auto& entry : fs::directory_iterator(testutil::fixtures_dir())) {
        if (entry.path().extension() != ".cir") continue;
        ++count;
        const NetlistAst ast = parse(slurp(entry.path().string()));
        const NetlistAst again = parse(print(ast));
        CHECK_MESSAGE(again == ast, "round-trip mismatch for ", entry.path().string());
        // printing is a fixed point
        CHECK(print(again) == print(ast));
    }
    CHECK(count >= 8);
}

TEST_CASE("printer round-trips randomized ASTs") {
    std::mt19937 rng(20240229);
    for (int k = 0; k < 100; ++k) {
        const NetlistAst ast = testutil::random_ast(rng);
        NetlistAst again;
        REQUIRE_NOTHROW(again = parse(print(ast)));
        CHECK(again == ast);
    }
}

TEST_CASE("pulse fields and subcircuit port order survive the round trip") {
    NetlistAst ast;
    Element src;
    src.name = "V1";
    src.kind = ElementKind::VoltageSource;
    src.nodes = {"in", "0"};
    SourceWaveform w;
    w.kind = SourceWaveform::Kind::Pulse;
    w.pulse = {-0.7, 0.0, 2.5e-9, 1.25e-9, 0.75e-9, 17.5e-9, 50e-9};
    src.waveform = w;
    ast.elements.push_back(src);

    SubcktDef sub;
    sub.name = "CELL";
    sub.ports = {"z", "a", "m"};  // deliberately non-alphabetical
    Element r;
    r.name = "R1";
    r.kind = ElementKind::Resistor;
    r.nodes = {"z", "m"};
    r.value = 123.456;
    sub.body.push_back(r);
    ast.subckts.push_back(sub);

    const NetlistAst again = parse(print(ast));
    CHECK(again == ast);
    CHECK(again.subckts[0].ports == std::vector<std::string>{"z", "a", "m"});
    CHECK(again.elements[0].waveform->pulse == w.pulse);
}

TEST_CASE("elaboration flattens hierarchy with dot-qualified names") {
    const Circuit c = testutil::elaborate_text(slurp(testutil::fixture("two_not.cir")));
    CHECK(c.node_index("X1.n1") >= 0);
    CHECK(c.node_index("X2.n1") >= 0);
    CHECK(c.node_index("X1.n1") != c.node_index("X2.n1"));
    CHECK(c.element_index("X1.J1") >= 0);
    CHECK(c.element_index("X2.NOUT") >= 0);
    // external nodes spliced, ground shared
    CHECK(c.node_index("in1") >= 0);
    CHECK(c.node_index("mid") >= 0);
    CHECK(c.node_names[0] == "0");

    // node count = external + internal * instantiation count
    // externals: in1, in2, mid, out; internals per NOT: n1, g, vb
    CHECK(c.num_nodes() == 1 + 4 + 2 * 3);
}

TEST_CASE("elaboration without subcircuits is the identity on elements") {
    const Circuit c = testutil::elaborate_text("R1 a 0 1k\nI1 0 a DC 1m\n.op\n");
    REQUIRE(c.elements.size() == 2);
    CHECK(c.elements[0].name == "R1");
    CHECK(c.elements[1].name == "I1");
}

TEST_CASE("elaboration is deterministic") {
    const std::string text = slurp(testutil::fixture("two_not.cir"));
    const NetlistAst ast = parse(text);
    ElaborationOptions opts;
    opts.card_search_paths = {testutil::cards_dir()};
    const Circuit a = elaborate(ast, opts);
    const Circuit b = elaborate(ast, opts);
    CHECK(a.node_names == b.node_names);
    REQUIRE(a.elements.size() == b.elements.size());
    for (std::size_t i = 0; i < a.elements.size(); ++i) {
        CHECK(a.elements[i].name == b.elements[i].name);
        CHECK(a.elements[i].nodes == b.elements[i].nodes);
    }
}

TEST_CASE("elaboration errors") {
    SUBCASE("recursive subcircuit") {
        const char* text =
            ".subckt LOOP a\n"
            "  X1 a LOOP\n"
            ".ends\n"
            "X0 n LOOP\n"
            "R1 n 0 1k\n";
        CHECK_THROWS_AS(testutil::elaborate_text(text), ElaborationError);
    }
    SUBCASE("port-count mismatch") {
        const char* text =
            ".subckt CELL a b\n"
            "  R1 a b 1k\n"
            ".ends\n"
            "X0 n CELL\n"
            "R2 n 0 1k\n";
        CHECK_THROWS_AS(testutil::elaborate_text(text), ElaborationError);
    }
    SUBCASE("unknown subcircuit") {
        CHECK_THROWS_AS(testutil::elaborate_text("X0 a b GHOST\nR1 a 0 1k\n"),
                        ElaborationError);
    }
    SUBCASE("missing card file") {
        CHECK_THROWS_AS(
            testutil::elaborate_text(".model M JJFET card=\"nope.card\"\n"
                                     "J1 a 0 g M\nR1 a 0 1k\n"),
            CardError);
    }
    SUBCASE("no ground connection") {
        CHECK_THROWS_AS(testutil::elaborate_text("R1 a b 1k\nV1 a b DC 1\n"),
                        ElaborationError);
    }
}

TEST_CASE("model overrides flow into device params") {
    const char* text =
        ".model M NTRON card=\"ntron_default.card\" latching=1 r_channel=10k\n"
        "N1 a 0 g M\n"
        "I1 0 a DC 1u\n"
        "R1 g 0 1k\n";
    const Circuit c = testutil::elaborate_text(text);
    const int idx = c.element_index("N1");
    REQUIRE(idx >= 0);
    CHECK(c.elements[static_cast<std::size_t>(idx)].ntron->latching);
    CHECK(c.elements[static_cast<std::size_t>(idx)].ntron->r_channel == 10e3);
}
