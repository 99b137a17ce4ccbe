#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "least/simulator.hpp"

namespace least {

/// Flat "key = value" configuration. '#' starts a comment; keys that are
/// not present keep their SimConfig defaults. Recognized keys:
///
///   n, area_width, area_height, bs_x, bs_y, initial_energy,
///   p_ch, p_hn, p_h, ch_window, hn_window, epsilon_amp, rx_cost,
///   protocol, seed, traffic_fraction, packets_per_sender, max_rounds
SimConfig parse_config(std::string_view text);
SimConfig load_config(const std::filesystem::path& path);

/// Every key with its value; doubles are written with 17 significant digits
/// so that parse_config(format_config(c)) == c.
std::vector<std::pair<std::string, std::string>> config_entries(const SimConfig& config);
std::string format_config(const SimConfig& config);
void save_config(const SimConfig& config, const std::filesystem::path& path);

/// Applies one key/value pair. Throws ConfigError for unknown keys and
/// malformed values.
void set_config_value(SimConfig& config, std::string_view key, std::string_view value);

} // namespace least
