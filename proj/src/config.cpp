#include "least/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "least/error.hpp"

namespace least {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError("invalid number '" + std::string(v) + "' for " + std::string(key));
    return out;
}

template <typename Int>
Int to_int(std::string_view key, std::string_view v) {
    Int out{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError("invalid integer '" + std::string(v) + "' for " + std::string(key));
    return out;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void set_config_value(SimConfig& c, std::string_view key, std::string_view value) {
    if (key == "n") c.n = to_int<int>(key, value);
    else if (key == "area_width") c.width = to_double(key, value);
    else if (key == "area_height") c.height = to_double(key, value);
    else if (key == "bs_x") c.bs_pos.x = to_double(key, value);
    else if (key == "bs_y") c.bs_pos.y = to_double(key, value);
    else if (key == "initial_energy") c.initial_energy = to_double(key, value);
    else if (key == "p_ch") c.params.p_ch = to_double(key, value);
    else if (key == "p_hn") c.params.p_hn = to_double(key, value);
    else if (key == "p_h") c.params.p_h = to_double(key, value);
    else if (key == "ch_window") c.params.ch_window = to_int<int>(key, value);
    else if (key == "hn_window") c.params.hn_window = to_int<int>(key, value);
    else if (key == "epsilon_amp") c.energy.epsilon_amp = to_double(key, value);
    else if (key == "rx_cost") c.energy.rx_cost = to_double(key, value);
    else if (key == "protocol") c.protocol = parse_protocol(value);
    else if (key == "seed") c.seed = to_int<std::uint64_t>(key, value);
    else if (key == "traffic_fraction") c.traffic_fraction = to_double(key, value);
    else if (key == "packets_per_sender") c.packets_per_sender = to_int<int>(key, value);
    else if (key == "max_rounds") c.max_rounds = to_int<int>(key, value);
    else throw ConfigError("unknown key '" + std::string(key) + "'");
}

SimConfig parse_config(std::string_view text) {
    SimConfig config;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        const std::string where = "line " + std::to_string(line_no) + ": ";
        if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) throw ConfigError(where + "expected 'key = value'");
        try {
            set_config_value(config, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
    }
    validate(config);
    return config;
}

SimConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::vector<std::pair<std::string, std::string>> config_entries(const SimConfig& c) {
    return {
        {"n", std::to_string(c.n)},
        {"area_width", fmt_double(c.width)},
        {"area_height", fmt_double(c.height)},
        {"bs_x", fmt_double(c.bs_pos.x)},
        {"bs_y", fmt_double(c.bs_pos.y)},
        {"initial_energy", fmt_double(c.initial_energy)},
        {"p_ch", fmt_double(c.params.p_ch)},
        {"p_hn", fmt_double(c.params.p_hn)},
        {"p_h", fmt_double(c.params.p_h)},
        {"ch_window", std::to_string(c.params.ch_window)},
        {"hn_window", std::to_string(c.params.hn_window)},
        {"epsilon_amp", fmt_double(c.energy.epsilon_amp)},
        {"rx_cost", fmt_double(c.energy.rx_cost)},
        {"protocol", std::string(to_string(c.protocol))},
        {"seed", std::to_string(c.seed)},
        {"traffic_fraction", fmt_double(c.traffic_fraction)},
        {"packets_per_sender", std::to_string(c.packets_per_sender)},
        {"max_rounds", std::to_string(c.max_rounds)},
    };
}

std::string format_config(const SimConfig& config) {
    std::string out;
    for (const auto& [k, v] : config_entries(config)) out += k + " = " + v + "\n";
    return out;
}

void save_config(const SimConfig& config, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write config file " + path.string());
    out << format_config(config);
}

} // namespace least
