#include "jjsim/netlist/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <string>

#include "jjsim/errors.hpp"

namespace jjsim::netlist {
namespace {

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) ==
                      std::tolower(static_cast<unsigned char>(y));
           });
}

struct Token {
    enum class Type { Word, String, LParen, RParen, Equals };

    Type type = Type::Word;
    std::string text;
    int line = 0;
    int col = 0;  // 1-based
};

/// One statement: the tokens of a physical line plus any `+` continuations.
struct Statement {
    std::vector<Token> tokens;
    int line = 0;  // line of the first physical line
};

bool is_word_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' &&
           c != '=' && c != '"' && c != ',';
}

void lex_line(std::string_view text, int line_no, std::vector<Token>& out) {
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            ++i;
            continue;
        }
        const int col = static_cast<int>(i) + 1;
        if (c == '(') {
            out.push_back({Token::Type::LParen, "(", line_no, col});
            ++i;
        } else if (c == ')') {
            out.push_back({Token::Type::RParen, ")", line_no, col});
            ++i;
        } else if (c == '=') {
            out.push_back({Token::Type::Equals, "=", line_no, col});
            ++i;
        } else if (c == '"') {
            const auto end = text.find('"', i + 1);
            if (end == std::string_view::npos) {
                throw ParseError(line_no, col, "unterminated string");
            }
            out.push_back({Token::Type::String,
                           std::string(text.substr(i + 1, end - i - 1)), line_no, col});
            i = end + 1;
        } else {
            std::size_t j = i;
            while (j < text.size() && is_word_char(text[j])) ++j;
            out.push_back({Token::Type::Word, std::string(text.substr(i, j - i)),
                           line_no, col});
            i = j;
        }
    }
}

std::vector<Statement> lex(std::string_view text) {
    std::vector<Statement> statements;
    std::istringstream input{std::string(text)};
    std::string raw;
    int line_no = 0;

    while (std::getline(input, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);

        const auto first = raw.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (raw[first] == '*') continue;

        const bool continuation = raw[first] == '+';
        std::string_view payload{raw};
        if (continuation) {
            if (statements.empty()) {
                throw ParseError(line_no, static_cast<int>(first) + 1,
                                 "continuation line without a preceding statement");
            }
            payload = payload.substr(first + 1);
            std::vector<Token> tokens;
            lex_line(payload, line_no, tokens);
            // column offset of the stripped '+' prefix is intentionally dropped
            for (auto& t : tokens) t.col += static_cast<int>(first) + 1;
            auto& dst = statements.back().tokens;
            dst.insert(dst.end(), tokens.begin(), tokens.end());
        } else {
            Statement st;
            st.line = line_no;
            lex_line(payload, line_no, st.tokens);
            if (!st.tokens.empty()) statements.push_back(std::move(st));
        }
    }
    return statements;
}

class Parser {
public:
    explicit Parser(std::string_view text) : statements_(lex(text)) {}

    NetlistAst run() {
        for (const auto& st : statements_) {
            if (st.tokens.front().text[0] == '.') {
                handle_directive(st);
            } else {
                handle_element(st);
            }
        }
        if (current_subckt_) {
            throw ParseError(subckt_line_, 1,
                             ".subckt '" + current_subckt_->name + "' not closed with .ends");
        }
        check_model_references();
        return std::move(ast_);
    }

private:
    static double number(const Token& t) {
        if (t.type != Token::Type::Word) {
            throw ParseError(t.line, t.col, "expected a number, got '" + t.text + "'");
        }
        return parse_si_number(t.text, t.line, t.col);
    }

    static const Token& expect(const Statement& st, std::size_t idx,
                               const char* what) {
        if (idx >= st.tokens.size()) {
            const auto& last = st.tokens.back();
            throw ParseError(last.line, last.col + static_cast<int>(last.text.size()),
                             std::string("expected ") + what);
        }
        return st.tokens[idx];
    }

    static void expect_end(const Statement& st, std::size_t count) {
        if (st.tokens.size() > count) {
            const auto& extra = st.tokens[count];
            throw ParseError(extra.line, extra.col,
                             "unexpected trailing token '" + extra.text + "'");
        }
    }

    std::vector<Element>& scope_elements() {
        return current_subckt_ ? current_subckt_->body : ast_.elements;
    }

    void check_unique_element(const Token& name_tok) {
        for (const auto& e : scope_elements()) {
            if (e.name == name_tok.text) {
                throw ParseError(name_tok.line, name_tok.col,
                                 "duplicate element name '" + name_tok.text + "'");
            }
        }
    }

    void handle_element(const Statement& st) {
        const Token& name = st.tokens.front();
        check_unique_element(name);

        Element el;
        el.name = name.text;
        const char lead = static_cast<char>(std::tolower(static_cast<unsigned char>(name.text[0])));
        switch (lead) {
            case 'r': parse_resistor(st, el); break;
            case 'i':
                el.kind = ElementKind::CurrentSource;
                parse_source(st, el);
                break;
            case 'v':
                el.kind = ElementKind::VoltageSource;
                parse_source(st, el);
                break;
            case 'j': parse_three_terminal(st, el, ElementKind::Jjfet); break;
            case 'n': parse_three_terminal(st, el, ElementKind::Ntron); break;
            case 'x': parse_instance(st, el); break;
            default:
                throw ParseError(name.line, name.col,
                                 "unknown element kind '" + std::string(1, name.text[0]) + "'");
        }
        scope_elements().push_back(std::move(el));
    }

    void parse_resistor(const Statement& st, Element& el) {
        el.kind = ElementKind::Resistor;
        el.nodes = {expect(st, 1, "node").text, expect(st, 2, "node").text};
        const Token& val = expect(st, 3, "resistance value");
        el.value = number(val);
        if (el.value <= 0.0) {
            throw ParseError(val.line, val.col, "resistance must be > 0");
        }
        expect_end(st, 4);
    }

    void parse_source(const Statement& st, Element& el) {
        el.nodes = {expect(st, 1, "node").text, expect(st, 2, "node").text};
        const Token& kw = expect(st, 3, "DC or PULSE");
        SourceWaveform w;
        if (iequals(kw.text, "DC")) {
            w.kind = SourceWaveform::Kind::Dc;
            w.dc_value = number(expect(st, 4, "source value"));
            expect_end(st, 5);
        } else if (iequals(kw.text, "PULSE")) {
            w.kind = SourceWaveform::Kind::Pulse;
            const Token& open = expect(st, 4, "'('");
            if (open.type != Token::Type::LParen) {
                throw ParseError(open.line, open.col, "expected '(' after PULSE");
            }
            double* fields[7] = {&w.pulse.low,  &w.pulse.high, &w.pulse.delay,
                                 &w.pulse.rise, &w.pulse.fall, &w.pulse.width,
                                 &w.pulse.period};
            for (int i = 0; i < 7; ++i) {
                *fields[i] = number(expect(st, 5 + static_cast<std::size_t>(i),
                                           "pulse field"));
            }
            const Token& close = expect(st, 12, "')'");
            if (close.type != Token::Type::RParen) {
                throw ParseError(close.line, close.col, "expected ')' closing PULSE");
            }
            expect_end(st, 13);
            try {
                w.validate();
            } catch (const Error& e) {
                throw ParseError(kw.line, kw.col, e.what());
            }
        } else {
            throw ParseError(kw.line, kw.col,
                             "expected DC or PULSE, got '" + kw.text + "'");
        }
        el.waveform = w;
    }

    void parse_three_terminal(const Statement& st, Element& el, ElementKind kind) {
        el.kind = kind;
        el.nodes = {expect(st, 1, "node").text, expect(st, 2, "node").text,
                    expect(st, 3, "node").text};
        el.model = expect(st, 4, "model name").text;
        expect_end(st, 5);
        model_refs_.push_back({el.model, st.tokens[4].line, st.tokens[4].col});
    }

    void parse_instance(const Statement& st, Element& el) {
        el.kind = ElementKind::Instance;
        if (st.tokens.size() < 3) {
            const Token& name = st.tokens.front();
            throw ParseError(name.line, name.col,
                             "instance needs at least one node and a subcircuit name");
        }
        for (std::size_t i = 1; i + 1 < st.tokens.size(); ++i) {
            el.nodes.push_back(st.tokens[i].text);
        }
        el.model = st.tokens.back().text;
    }

    void handle_directive(const Statement& st) {
        const Token& head = st.tokens.front();
        const std::string kw = to_lower(head.text);

        if (kw == ".ends") {
            if (!current_subckt_) {
                throw ParseError(head.line, head.col, ".ends without .subckt");
            }
            if (st.tokens.size() > 1) {
                if (st.tokens[1].text != current_subckt_->name) {
                    throw ParseError(st.tokens[1].line, st.tokens[1].col,
                                     ".ends name '" + st.tokens[1].text +
                                         "' does not match .subckt '" +
                                         current_subckt_->name + "'");
                }
                expect_end(st, 2);
            }
            ast_.subckts.push_back(std::move(*current_subckt_));
            current_subckt_.reset();
            return;
        }

        if (current_subckt_) {
            throw ParseError(head.line, head.col,
                             "directive '" + head.text + "' not allowed inside .subckt");
        }

        if (kw == ".model") {
            parse_model(st);
        } else if (kw == ".subckt") {
            parse_subckt_header(st);
        } else if (kw == ".op") {
            expect_end(st, 1);
            set_analysis({AnalysisSpec::Kind::Op, 0.0, 0.0}, head);
        } else if (kw == ".tran") {
            AnalysisSpec a;
            a.kind = AnalysisSpec::Kind::Tran;
            a.step = number(expect(st, 1, "step"));
            a.stop = number(expect(st, 2, "stop"));
            expect_end(st, 3);
            set_analysis(a, head);
        } else if (kw == ".print") {
            parse_print(st);
        } else {
            throw ParseError(head.line, head.col, "unknown directive '" + head.text + "'");
        }
    }

    void set_analysis(const AnalysisSpec& a, const Token& head) {
        if (ast_.analysis.kind != AnalysisSpec::Kind::None) {
            throw ParseError(head.line, head.col, "multiple analysis directives");
        }
        ast_.analysis = a;
    }

    void parse_model(const Statement& st) {
        ModelDef def;
        const Token& name = expect(st, 1, "model name");
        def.name = name.text;
        for (const auto& m : ast_.models) {
            if (m.name == def.name) {
                throw ParseError(name.line, name.col,
                                 "duplicate model name '" + def.name + "'");
            }
        }
        const Token& kind = expect(st, 2, "device kind (JJFET or NTRON)");
        if (iequals(kind.text, "JJFET")) {
            def.device = DeviceKind::Jjfet;
        } else if (iequals(kind.text, "NTRON")) {
            def.device = DeviceKind::Ntron;
        } else {
            throw ParseError(kind.line, kind.col,
                             "unknown device kind '" + kind.text + "'");
        }

        bool have_card = false;
        std::size_t i = 3;
        while (i < st.tokens.size()) {
            const Token& key = st.tokens[i];
            const Token& eq = expect(st, i + 1, "'='");
            if (eq.type != Token::Type::Equals) {
                throw ParseError(eq.line, eq.col, "expected '=' after '" + key.text + "'");
            }
            const Token& val = expect(st, i + 2, "attribute value");
            if (iequals(key.text, "card")) {
                if (val.type != Token::Type::String) {
                    throw ParseError(val.line, val.col, "card path must be quoted");
                }
                def.card_path = val.text;
                have_card = true;
            } else {
                def.overrides[to_lower(key.text)] = number(val);
            }
            i += 3;
        }
        if (!have_card) {
            throw ParseError(name.line, name.col,
                             "model '" + def.name + "' needs a card=\"<path>\" attribute");
        }
        ast_.models.push_back(std::move(def));
    }

    void parse_subckt_header(const Statement& st) {
        const Token& name = expect(st, 1, "subcircuit name");
        for (const auto& s : ast_.subckts) {
            if (s.name == name.text) {
                throw ParseError(name.line, name.col,
                                 "duplicate subcircuit name '" + name.text + "'");
            }
        }
        SubcktDef def;
        def.name = name.text;
        if (st.tokens.size() < 3) {
            throw ParseError(name.line, name.col,
                             "subcircuit '" + name.text + "' needs at least one port");
        }
        std::set<std::string> seen;
        for (std::size_t i = 2; i < st.tokens.size(); ++i) {
            const Token& port = st.tokens[i];
            if (!seen.insert(port.text).second) {
                throw ParseError(port.line, port.col,
                                 "duplicate port '" + port.text + "'");
            }
            def.ports.push_back(port.text);
        }
        current_subckt_ = std::move(def);
        subckt_line_ = name.line;
    }

    void parse_print(const Statement& st) {
        if (st.tokens.size() < 2) {
            const Token& head = st.tokens.front();
            throw ParseError(head.line, head.col, ".print needs at least one probe");
        }
        std::size_t i = 1;
        while (i < st.tokens.size()) {
            const Token& kind = st.tokens[i];
            Probe probe;
            if (iequals(kind.text, "v")) {
                probe.kind = Probe::Kind::NodeVoltage;
            } else if (iequals(kind.text, "i")) {
                probe.kind = Probe::Kind::ElementCurrent;
            } else {
                throw ParseError(kind.line, kind.col,
                                 "probe must be v(<node>) or i(<element>)");
            }
            const Token& open = expect(st, i + 1, "'('");
            if (open.type != Token::Type::LParen) {
                throw ParseError(open.line, open.col, "expected '(' in probe");
            }
            const Token& target = expect(st, i + 2, "probe target");
            const Token& close = expect(st, i + 3, "')'");
            if (close.type != Token::Type::RParen) {
                throw ParseError(close.line, close.col, "expected ')' in probe");
            }
            probe.target = target.text;
            ast_.probes.push_back(std::move(probe));
            i += 4;
        }
    }

    void check_model_references() const {
        for (const auto& ref : model_refs_) {
            const bool found = std::any_of(
                ast_.models.begin(), ast_.models.end(),
                [&](const ModelDef& m) { return m.name == ref.name; });
            if (!found) {
                throw ParseError(ref.line, ref.col,
                                 "reference to undefined model '" + ref.name + "'");
            }
        }
    }

    struct ModelRef {
        std::string name;
        int line;
        int col;
    };

    std::vector<Statement> statements_;
    NetlistAst ast_;
    std::optional<SubcktDef> current_subckt_;
    int subckt_line_ = 0;
    std::vector<ModelRef> model_refs_;
};

}  // namespace

double parse_si_number(std::string_view token, int line, int col) {
    std::string_view body = token;
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);

    double value = 0.0;
    const char* first = body.data();
    const char* last = body.data() + body.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == first || !std::isfinite(value)) {
        throw ParseError(line, col, "malformed number '" + std::string(token) + "'");
    }

    std::string_view suffix(ptr, static_cast<std::size_t>(last - ptr));
    if (suffix.empty()) return value;
    if (iequals(suffix, "meg")) return value * 1e6;
    if (suffix.size() == 1) {
        switch (std::tolower(static_cast<unsigned char>(suffix[0]))) {
            case 'p': return value * 1e-12;
            case 'n': return value * 1e-9;
            case 'u': return value * 1e-6;
            case 'm': return value * 1e-3;
            case 'k': return value * 1e3;
            default: break;
        }
    }
    throw ParseError(line, col, "unknown unit suffix in '" + std::string(token) + "'");
}

NetlistAst parse(std::string_view text) { return Parser(text).run(); }

}  // namespace jjsim::netlist
