#include "jjsim/devices/card.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "jjsim/errors.hpp"

namespace jjsim::devices {
namespace {

std::string strip(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

double parse_number(const std::string& tok, const std::string& path, int line) {
    double value = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw CardError(path, line, "expected a number, got '" + tok + "'");
    }
    return value;
}

}  // namespace

double DeviceCard::param(const std::string& name) const {
    auto it = params.find(name);
    if (it == params.end()) {
        throw CardError(path, 0, "missing required param '" + name + "'");
    }
    return it->second;
}

const LookupTable1D& DeviceCard::table(const std::string& name) const {
    auto it = tables.find(name);
    if (it == tables.end()) {
        throw CardError(path, 0, "missing required table '" + name + "'");
    }
    return it->second;
}

DeviceCard parse_card(std::string_view text, const std::string& path_for_errors) {
    DeviceCard card;
    card.path = path_for_errors;

    std::istringstream input{std::string(text)};
    std::string raw;
    int line_no = 0;

    bool in_table = false;
    std::string table_name;
    std::vector<LookupTable1D::Point> points;
    int table_start_line = 0;

    while (std::getline(input, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string line = strip(raw);
        if (line.empty()) continue;

        auto tokens = split_ws(line);
        if (in_table) {
            if (tokens.size() == 1 && tokens[0] == "end") {
                try {
                    card.tables[table_name] = LookupTable1D(std::move(points));
                } catch (const InvalidTableError& e) {
                    throw CardError(path_for_errors, table_start_line,
                                    "table '" + table_name + "': " + e.what());
                }
                points.clear();
                in_table = false;
                continue;
            }
            if (tokens.size() != 2) {
                throw CardError(path_for_errors, line_no,
                                "table row must be '<x> <y>', got '" + line + "'");
            }
            points.emplace_back(parse_number(tokens[0], path_for_errors, line_no),
                                parse_number(tokens[1], path_for_errors, line_no));
            continue;
        }

        if (tokens[0] == "param") {
            // param <name> = <number>
            if (tokens.size() != 4 || tokens[2] != "=") {
                throw CardError(path_for_errors, line_no,
                                "expected 'param <name> = <number>'");
            }
            if (card.params.count(tokens[1]) > 0) {
                throw CardError(path_for_errors, line_no,
                                "duplicate param '" + tokens[1] + "'");
            }
            card.params[tokens[1]] = parse_number(tokens[3], path_for_errors, line_no);
        } else if (tokens[0] == "table") {
            if (tokens.size() != 2) {
                throw CardError(path_for_errors, line_no, "expected 'table <name>'");
            }
            if (card.tables.count(tokens[1]) > 0) {
                throw CardError(path_for_errors, line_no,
                                "duplicate table '" + tokens[1] + "'");
            }
            in_table = true;
            table_name = tokens[1];
            table_start_line = line_no;
        } else {
            throw CardError(path_for_errors, line_no,
                            "unknown card directive '" + tokens[0] + "'");
        }
    }
    if (in_table) {
        throw CardError(path_for_errors, table_start_line,
                        "table '" + table_name + "' not closed with 'end'");
    }
    return card;
}

DeviceCard load_card(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CardError(path, 0, "cannot open card file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_card(buf.str(), path);
}

namespace {

double pick(const DeviceCard& card, const ParamOverrides& overrides,
            const std::string& name) {
    if (auto it = overrides.find(name); it != overrides.end()) return it->second;
    return card.param(name);
}

double pick_or(const DeviceCard& card, const ParamOverrides& overrides,
               const std::string& name, double fallback) {
    if (auto it = overrides.find(name); it != overrides.end()) return it->second;
    if (card.has_param(name)) return card.params.at(name);
    return fallback;
}

}  // namespace

JjfetParams jjfet_from_card(const DeviceCard& card, const ParamOverrides& overrides) {
    JjfetParams p;
    p.v_t = pick(card, overrides, "v_t");
    p.v_crit = pick(card, overrides, "v_crit");
    p.ic_a0 = pick(card, overrides, "ic_a0");
    p.ic_a1 = pick(card, overrides, "ic_a1");
    p.r_sg = card.table("r_sg");
    p.r_n = card.table("r_n");
    if (overrides.count("delta_gap") > 0) {
        p.delta_gap = overrides.at("delta_gap");
    } else if (card.has_param("delta_gap")) {
        p.delta_gap = card.params.at("delta_gap");
    }
    try {
        p.validate();
    } catch (const Error& e) {
        throw CardError(card.path, 0, e.what());
    }
    return p;
}

NtronParams ntron_from_card(const DeviceCard& card, const ParamOverrides& overrides) {
    NtronParams p;
    p.r_channel = pick(card, overrides, "r_channel");
    p.i_sw = card.table("i_sw");
    p.latching = pick_or(card, overrides, "latching", 0.0) != 0.0;
    try {
        p.validate();
    } catch (const Error& e) {
        throw CardError(card.path, 0, e.what());
    }
    return p;
}

}  // namespace jjsim::devices
