#include "oemi/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace oemi {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

std::optional<double> parse_number(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

constexpr std::array<std::string_view, 7> kRequired{"kappa_a", "kappa_c", "kappa_d", "gamma_m",
                                                    "n_th",    "omega_m", "g_a"};
constexpr std::array<std::string_view, 7> kOptional{"kappa_ext_a", "kappa_ext_c", "kappa_ext_d", "g_c",
                                                    "g_x",         "g_d_mag",     "g_d_phase"};

bool is_known(std::string_view key) {
    for (auto k : kRequired)
        if (k == key) return true;
    for (auto k : kOptional)
        if (k == key) return true;
    return false;
}

double number_for(const std::string& key, const std::string& value) {
    const auto v = parse_number(value);
    if (!v || !std::isfinite(*v)) throw ConfigError(key, "expected a finite number, got '" + value + "'");
    return *v;
}

std::optional<double> number_or_auto(const std::map<std::string, std::string, std::less<>>& kv, const char* key) {
    const auto it = kv.find(key);
    if (it == kv.end() || it->second == "auto") return std::nullopt;
    return number_for(key, it->second);
}

void check(bool ok, const char* key, const char* message) {
    if (!ok) throw ConfigError(key, message);
}

} // namespace

ConfigFile parse_config(std::string_view text) {
    std::map<std::string, std::string, std::less<>> kv;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (!is_known(key)) throw ConfigError(key, "unknown key (line " + std::to_string(line_no) + ")");
        if (value.empty()) throw ConfigError(key, "missing value");
        if (!kv.emplace(key, value).second) throw ConfigError(key, "repeated key");
    }

    for (auto k : kRequired) {
        if (kv.find(k) == kv.end()) throw ConfigError(std::string(k), "missing required key");
    }

    ConfigFile cfg;
    cfg.kappa_a = number_for("kappa_a", kv.at("kappa_a"));
    cfg.kappa_c = number_for("kappa_c", kv.at("kappa_c"));
    cfg.kappa_d = number_for("kappa_d", kv.at("kappa_d"));
    cfg.gamma_m = number_for("gamma_m", kv.at("gamma_m"));
    cfg.n_th = number_for("n_th", kv.at("n_th"));
    cfg.omega_m = number_for("omega_m", kv.at("omega_m"));
    cfg.g_a = number_for("g_a", kv.at("g_a"));
    using ExtField = std::optional<double> ConfigFile::*;
    constexpr std::array<std::pair<const char*, ExtField>, 3> ext_keys{{{"kappa_ext_a", &ConfigFile::kappa_ext_a},
                                                                        {"kappa_ext_c", &ConfigFile::kappa_ext_c},
                                                                        {"kappa_ext_d", &ConfigFile::kappa_ext_d}}};
    for (const auto& [key, field] : ext_keys) {
        if (const auto it = kv.find(key); it != kv.end()) cfg.*field = number_for(key, it->second);
    }
    cfg.g_c = number_or_auto(kv, "g_c");
    cfg.g_x = number_or_auto(kv, "g_x");
    cfg.g_d_mag = number_or_auto(kv, "g_d_mag");

    const auto phase = kv.find("g_d_phase");
    if (phase == kv.end() || phase->second == "forward") {
        cfg.direction = Direction::forward;
    } else if (phase->second == "reverse") {
        cfg.direction = Direction::reverse;
    } else {
        cfg.g_d_phase = number_for("g_d_phase", phase->second);
    }
    return cfg;
}

ConfigFile load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", "cannot read config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

SystemParams ConfigFile::resolve() const {
    check(kappa_a > 0.0, "kappa_a", "must be positive");
    check(kappa_c > 0.0, "kappa_c", "must be positive");
    check(kappa_d > 0.0, "kappa_d", "must be positive");
    check(gamma_m > 0.0, "gamma_m", "must be positive");
    check(n_th >= 0.0, "n_th", "must be nonnegative");
    check(omega_m >= 0.0, "omega_m", "must be nonnegative");
    check(g_a >= 0.0, "g_a", "must be nonnegative");
    check(!g_c || *g_c >= 0.0, "g_c", "must be nonnegative");
    check(!g_x || *g_x >= 0.0, "g_x", "must be nonnegative");
    check(!g_d_mag || *g_d_mag >= 0.0, "g_d_mag", "must be nonnegative");

    SystemParams p;
    p.cavity_a = {Port::a, kappa_a, kappa_ext_a.value_or(kappa_a)};
    p.cavity_c = {Port::c, kappa_c, kappa_ext_c.value_or(kappa_c)};
    p.cavity_d = {Port::d, kappa_d, kappa_ext_d.value_or(kappa_d)};
    check(p.cavity_a.kappa_ext >= 0.0 && p.cavity_a.kappa_ext <= kappa_a, "kappa_ext_a", "must lie in [0, kappa_a]");
    check(p.cavity_c.kappa_ext >= 0.0 && p.cavity_c.kappa_ext <= kappa_c, "kappa_ext_c", "must lie in [0, kappa_c]");
    check(p.cavity_d.kappa_ext >= 0.0 && p.cavity_d.kappa_ext <= kappa_d, "kappa_ext_d", "must lie in [0, kappa_d]");
    p.mech = {gamma_m, n_th, omega_m};

    auto& c = p.couplings;
    c.g_a = g_a;
    c.g_c = g_c ? *g_c : optimal_g_c(g_a, kappa_a, kappa_c, gamma_m);
    c.g_x = g_x ? *g_x : std::sqrt(kappa_c * kappa_d) / 2.0;
    c.g_d_mag = g_d_mag ? *g_d_mag : c.g_c * std::sqrt(kappa_d / kappa_c);
    c.g_d_phase = direction ? direction_phase(*direction) : g_d_phase;

    require_valid(p);
    return p;
}

std::string format_config(const SystemParams& p) {
    std::ostringstream out;
    auto line = [&out](const char* key, double v) { out << key << " = " << format_number(v) << '\n'; };
    line("kappa_a", p.cavity_a.kappa);
    line("kappa_c", p.cavity_c.kappa);
    line("kappa_d", p.cavity_d.kappa);
    line("kappa_ext_a", p.cavity_a.kappa_ext);
    line("kappa_ext_c", p.cavity_c.kappa_ext);
    line("kappa_ext_d", p.cavity_d.kappa_ext);
    line("gamma_m", p.mech.gamma_m);
    line("n_th", p.mech.n_th);
    line("omega_m", p.mech.omega_m);
    line("g_a", p.couplings.g_a);
    line("g_c", p.couplings.g_c);
    line("g_x", p.couplings.g_x);
    line("g_d_mag", p.couplings.g_d_mag);
    line("g_d_phase", p.couplings.g_d_phase);
    return out.str();
}

} // namespace oemi
