#pragma once

// Flat `key = value` configuration files.
//
//   # comment
//   kappa_a = 5
//   g_c = auto
//   g_d_phase = forward
//
// Required: kappa_a kappa_c kappa_d gamma_m n_th omega_m g_a
// Optional: kappa_ext_a kappa_ext_c kappa_ext_d (default: total damping)
//           g_c g_x g_d_mag (number or "auto", default auto)
//           g_d_phase ("forward", "reverse" or radians, default forward)
// Unknown or repeated keys are errors.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "oemi/error.hpp"
#include "oemi/params.hpp"

namespace oemi {

class ConfigError : public ParameterError {
public:
    ConfigError(std::string key, const std::string& message)
        : ParameterError(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

    const std::string& key() const { return key_; }

private:
    std::string key_;
};

struct ConfigFile {
    double kappa_a = 0.0;
    double kappa_c = 0.0;
    double kappa_d = 0.0;
    std::optional<double> kappa_ext_a;
    std::optional<double> kappa_ext_c;
    std::optional<double> kappa_ext_d;
    double gamma_m = 0.0;
    double n_th = 0.0;
    double omega_m = 0.0;
    double g_a = 0.0;
    std::optional<double> g_c;      // empty = auto
    std::optional<double> g_x;      // empty = auto
    std::optional<double> g_d_mag;  // empty = auto
    std::optional<Direction> direction;  // set for "forward"/"reverse"
    double g_d_phase = 0.0;              // used when direction is empty

    // Applies the auto rules (optimal g_c, matched g_x, impedance-matched
    // |g_d|, direction phase) and validates. Throws ConfigError naming the
    // offending key.
    SystemParams resolve() const;
};

ConfigFile parse_config(std::string_view text);
ConfigFile load_config(const std::filesystem::path& path);

// Every key written explicitly with shortest round-trip numbers, so
// parse_config(format_config(p)).resolve() == p bit for bit.
std::string format_config(const SystemParams& params);

// Shortest representation that parses back to the same double; locale
// independent. Non-finite values print as "inf", "-inf", "nan".
std::string format_number(double value);

// Locale-independent strict parse of a whole string; empty on failure.
std::optional<double> parse_number(std::string_view text);

} // namespace oemi
