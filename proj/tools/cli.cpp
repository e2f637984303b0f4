#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>

#include "oemi/oemi.hpp"

namespace oemi::cli {

namespace {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Formatting helpers
// ---------------------------------------------------------------------------

json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

json complex_json(complex z) { return json{{"re", number(z.real())}, {"im", number(z.imag())}}; }

std::string complex_text(complex z) {
    std::string s = format_number(z.real());
    s += z.imag() < 0.0 || std::signbit(z.imag()) ? " - " : " + ";
    s += format_number(std::abs(z.imag()));
    s += "i";
    return s;
}

std::string port_text(Port p) { return std::string(1, port_name(p)); }

std::string cycle_text(const std::array<Port, 3>& c) {
    return port_text(c[0]) + " -> " + port_text(c[1]) + " -> " + port_text(c[2]) + " -> " + port_text(c[0]);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> parse_number_list(const std::string& s, const char* flag) {
    std::vector<double> out;
    for (const auto& item : split_list(s)) {
        const auto v = parse_number(item);
        if (!v || !std::isfinite(*v)) throw ParameterError(std::string(flag) + ": '" + item + "' is not a number");
        out.push_back(*v);
    }
    if (out.empty()) throw ParameterError(std::string(flag) + ": empty list");
    return out;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ParameterError("cannot open output file '" + path + "'");
    f << text;
    if (!f) throw ParameterError("failed writing output file '" + path + "'");
}

void print_warnings(const Warnings& warnings, std::ostream& err) {
    for (const auto& w : warnings) err << "warning [" << w.code << "]: " << w.message << '\n';
}

class Csv {
public:
    explicit Csv(const std::vector<std::string>& header) {
        for (std::size_t i = 0; i < header.size(); ++i) text_ += (i ? "," : "") + header[i];
        text_ += '\n';
    }
    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) text_ += (i ? "," : "") + format_number(values[i]);
        text_ += '\n';
    }
    const std::string& str() const { return text_; }

private:
    std::string text_;
};

// ---------------------------------------------------------------------------
// JSON renderers
// ---------------------------------------------------------------------------

json derived_json(const DerivedRates& r) {
    json j;
    j["gamma_big_a"] = number(r.gamma_big_a);
    j["gamma_big_c"] = number(r.gamma_big_c);
    j["gamma_big_d"] = number(r.gamma_big_d);
    j["gamma_tilde"] = number(r.gamma_tilde);
    j["cooperativity"] = r.cooperativity ? number(*r.cooperativity) : json("unbounded");
    return j;
}

json routing_json(const RoutingReport& r) {
    json j;
    j["direction"] = std::string(direction_name(r.direction));
    j["from"] = port_text(r.from);
    j["to"] = port_text(r.to);
    j["isolation_db"] = number(r.isolation_db);
    j["insertion_loss_db"] = number(r.insertion_loss_db);
    j["noise_leakage_power"] = number(r.noise_leakage_power);
    j["added_thermal_photons"] = number(r.added_thermal_photons);
    j["circulation"] = json::array({port_text(r.circulation[0]), port_text(r.circulation[1]),
                                    port_text(r.circulation[2])});
    j["switch_target"] = port_text(r.switch_target);
    j["peak_t31"] = number(r.peak_t31);
    return j;
}

json stability_json(const StabilityReport& r) {
    json j;
    j["s"] = json::array();
    for (double v : r.coefficients.s) j["s"].push_back(number(v));
    j["condition_values"] = json::array();
    for (double v : r.condition_values) j["condition_values"].push_back(number(v));
    j["stable"] = r.stable;
    j["marginal"] = r.marginal;
    if (r.eigenvalues) {
        j["eigenvalues"] = json::array();
        for (complex z : *r.eigenvalues) j["eigenvalues"].push_back(complex_json(z));
    }
    if (r.max_real_part) j["max_real_part"] = number(*r.max_real_part);
    return j;
}

// ---------------------------------------------------------------------------
// Human-readable renderers
// ---------------------------------------------------------------------------

void row(std::ostream& os, std::string_view label, const std::string& value) {
    os << "  " << label;
    for (std::size_t i = label.size(); i < 28; ++i) os << ' ';
    os << value << '\n';
}

void print_derived(std::ostream& os, const DerivedRates& r) {
    os << "derived rates (MHz, rate/2pi)\n";
    row(os, "Gamma_a", format_number(r.gamma_big_a));
    row(os, "Gamma_c", format_number(r.gamma_big_c));
    row(os, "Gamma_d", format_number(r.gamma_big_d));
    row(os, "gamma_tilde", format_number(r.gamma_tilde));
    row(os, "cooperativity", r.cooperativity ? format_number(*r.cooperativity) : "unbounded");
}

void print_routing(std::ostream& os, const RoutingReport& r) {
    os << "routing at omega = 0\n";
    row(os, "direction", std::string(direction_name(r.direction)));
    row(os, "circulation", cycle_text(r.circulation));
    row(os, "switch target (a_in)", port_text(r.switch_target));
    row(os, "transfer", port_text(r.from) + " -> " + port_text(r.to));
    row(os, "|T_transfer|", format_number(r.peak_t31));
    row(os, "isolation (dB)", format_number(r.isolation_db));
    row(os, "insertion loss (dB)", format_number(r.insertion_loss_db));
    row(os, "noise leakage |T_tb|^2", format_number(r.noise_leakage_power));
    row(os, "added thermal photons", format_number(r.added_thermal_photons));
}

void print_loss(std::ostream& os, const LossScaling& l) {
    os << "external coupling\n";
    row(os, "efficiency", format_number(l.efficiency));
    row(os, "|T_transfer| at ports", format_number(l.scaled_t31));
}

void print_stability(std::ostream& os, const StabilityReport& r) {
    os << "stability (Routh-Hurwitz)\n";
    const auto& s = r.coefficients.s;
    for (int i = 0; i < 4; ++i) row(os, "s" + std::to_string(i), format_number(s[static_cast<std::size_t>(i)]));
    row(os, "min s_i", format_number(r.condition_values[0]));
    row(os, "s3 s2 - s1", format_number(r.condition_values[1]));
    row(os, "s3 s2 s1 - s1^2 - s0 s3^2", format_number(r.condition_values[2]));
    if (r.eigenvalues) {
        for (std::size_t k = 0; k < 4; ++k) row(os, "lambda_" + std::to_string(k + 1), complex_text((*r.eigenvalues)[k]));
    }
    if (r.max_real_part) row(os, "max Re(lambda)", format_number(*r.max_real_part));
    row(os, "verdict", r.stable ? (r.marginal ? "stable (marginal)" : "stable") : "unstable");
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

SystemParams load_params(const std::string& path, std::ostream& err) {
    const SystemParams p = load_config(path).resolve();
    print_warnings(validate(p), err);
    return p;
}

int cmd_report(const std::string& config, bool as_json, std::ostream& out, std::ostream& err) {
    const SystemParams p = load_params(config, err);
    const DerivedRates derived = derived_rates(p);
    const RoutingReport routing = routing_report(p);
    const StabilityReport stability = stability_report(p);
    const LossScaling loss = external_loss_scaling(p, routing.peak_t31);
    if (as_json) {
        json j;
        j["routing"] = routing_json(routing);
        j["routing"]["external_efficiency"] = number(loss.efficiency);
        j["routing"]["scaled_transfer"] = number(loss.scaled_t31);
        j["stability"] = stability_json(stability);
        j["derived"] = derived_json(derived);
        out << j.dump(2) << '\n';
    } else {
        print_derived(out, derived);
        print_routing(out, routing);
        print_loss(out, loss);
        print_stability(out, stability);
    }
    return kExitOk;
}

int cmd_stability(const std::string& config, bool as_json, std::ostream& out, std::ostream& err) {
    const SystemParams p = load_params(config, err);
    const StabilityReport r = stability_report(p);
    if (as_json) {
        out << stability_json(r).dump(2) << '\n';
    } else {
        print_stability(out, r);
    }
    return kExitOk;
}

int cmd_sweep(const std::string& config, double omega_min, double omega_max, std::size_t points,
              const std::string& elements, const std::string& out_path, std::ostream& out, std::ostream& err) {
    std::vector<Element> requested;
    for (const auto& e : split_list(elements)) requested.push_back(Element::parse(e));
    if (requested.empty()) throw ParameterError("--elements: empty list");
    uniform_grid(omega_min, omega_max, points);  // validates flags before loading anything

    const SystemParams p = load_params(config, err);
    const SpectrumTable table = sweep(p, omega_min, omega_max, points);

    std::vector<std::string> header{"omega_mhz"};
    for (const auto& e : requested) header.push_back(e.label() + "_abs");
    Csv csv(header);
    for (std::size_t k = 0; k < table.size(); ++k) {
        std::vector<double> values{table.omegas[k]};
        for (const auto& e : requested) values.push_back(table.at(k, e));
        csv.row(values);
    }
    write_text(out_path, csv.str(), out);
    return kExitOk;
}

int cmd_optimize(const std::string& config, const std::string& direction_flag, const std::string& emit_path,
                 bool as_json, std::ostream& out, std::ostream& err) {
    const SystemParams base = load_config(config).resolve();
    Direction direction = Direction::forward;
    if (direction_flag == "reverse") {
        direction = Direction::reverse;
    } else if (direction_flag != "forward") {
        throw ParameterError("--direction must be 'forward' or 'reverse'");
    }
    const SystemParams p = apply_nonreciprocal_conditions(base, direction);
    print_warnings(validate(p), err);

    const ResonantTransmission res = t31_resonant(p);
    const RoutingReport routing = routing_report(p);
    if (as_json) {
        json j;
        j["direction"] = std::string(direction_name(direction));
        j["g_c"] = number(p.couplings.g_c);
        j["g_x"] = number(p.couplings.g_x);
        j["g_d_mag"] = number(p.couplings.g_d_mag);
        j["g_d_phase"] = number(p.couplings.g_d_phase);
        j["predicted_peak_t31"] = number(res.peak_t31);
        j["transfer_abs"] = number(routing.peak_t31);
        out << j.dump(2) << '\n';
    } else {
        out << "operating point (" << direction_name(direction) << ", " << cycle_text(routing.circulation) << ")\n";
        row(out, "g_c", format_number(p.couplings.g_c));
        row(out, "g_x", format_number(p.couplings.g_x));
        row(out, "|g_d|", format_number(p.couplings.g_d_mag));
        row(out, "arg g_d (rad)", format_number(p.couplings.g_d_phase));
        row(out, "predicted peak T31", format_number(res.peak_t31));
        row(out, "|T_" + port_text(routing.to) + port_text(routing.from) + "(0)| exact", format_number(routing.peak_t31));
    }
    if (!emit_path.empty()) write_text(emit_path, format_config(p), out);
    return kExitOk;
}

int cmd_fig2(const std::string& out_path, double kappa, double gc_max, std::size_t points, const std::string& ga_list,
             const std::string& gm_list, std::ostream& out) {
    const auto g_as = parse_number_list(ga_list, "--ga");
    const auto gamma_ms = parse_number_list(gm_list, "--gm");
    if (!(kappa > 0.0) || !(gc_max > 0.0) || points < 2) {
        throw ParameterError("fig2 requires --kappa > 0, --gc-max > 0 and --points >= 2");
    }

    // Uniform grid on (0, gc_max] plus the closed-form optimum of each curve.
    std::vector<double> grid;
    for (std::size_t k = 1; k <= points; ++k) {
        grid.push_back(gc_max * (static_cast<double>(k) / static_cast<double>(points)));
    }
    for (double ga : g_as)
        for (double gm : gamma_ms) {
            const double opt = optimal_g_c(ga, kappa, kappa, gm);
            if (opt > 0.0 && opt <= gc_max) grid.push_back(opt);
        }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<std::string> header{"g_c_mhz"};
    for (double ga : g_as)
        for (double gm : gamma_ms) header.push_back("T31_ga" + format_number(ga) + "_gm" + format_number(gm));
    Csv csv(header);
    for (double gc : grid) {
        std::vector<double> values{gc};
        for (double ga : g_as)
            for (double gm : gamma_ms) {
                const SystemParams p = nonreciprocal_configuration(ga, gc, {kappa, kappa, kappa}, gm, Direction::forward);
                values.push_back(std::abs(scattering_matrix(p, 0.0).at(Port::c, Port::a)));
            }
        csv.row(values);
    }
    write_text(out_path, csv.str(), out);
    return kExitOk;
}

int cmd_fig3(const std::string& out_path, double omega_min, double omega_max, std::size_t points, double kappa,
             double gamma_m, const std::string& ga_list, std::ostream& out) {
    const auto g_as = parse_number_list(ga_list, "--ga");
    const auto grid = uniform_grid(omega_min, omega_max, points);

    std::vector<SpectrumTable> tables;
    std::vector<std::string> header{"omega_mhz"};
    for (double ga : g_as) {
        const SystemParams p = nonreciprocal_configuration(ga, std::nullopt, {kappa, kappa, kappa}, gamma_m, Direction::forward);
        tables.push_back(sweep(p, omega_min, omega_max, points));
        header.push_back("T31_abs_ga" + format_number(ga));
        header.push_back("T13_abs_ga" + format_number(ga));
    }
    Csv csv(header);
    const Element t31{3, 1};
    const Element t13{1, 3};
    for (std::size_t k = 0; k < grid.size(); ++k) {
        std::vector<double> values{grid[k]};
        for (const auto& t : tables) {
            values.push_back(t.at(k, t31));
            values.push_back(t.at(k, t13));
        }
        csv.row(values);
    }
    write_text(out_path, csv.str(), out);
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Four-mode optoelectromechanical nonreciprocal interface: scattering, routing, stability", "oemi"};
    app.require_subcommand(1);

    std::string config;
    bool as_json = false;

    auto* report = app.add_subcommand("report", "Derived rates, routing metrics and stability at omega = 0");
    report->add_option("config", config, "Config file")->required();
    report->add_flag("--json", as_json, "Emit one JSON object");

    double omega_min = -25.0;
    double omega_max = 25.0;
    std::size_t points = 2001;
    std::string elements = "31,13,41,21";
    std::string out_path;
    auto* sweep_cmd = app.add_subcommand("sweep", "CSV of |T_ij(omega)| on a uniform grid");
    sweep_cmd->add_option("config", config, "Config file")->required();
    sweep_cmd->add_option("--min", omega_min, "Lowest probe frequency (MHz)");
    sweep_cmd->add_option("--max", omega_max, "Highest probe frequency (MHz)");
    sweep_cmd->add_option("--points", points, "Grid points, endpoints included");
    sweep_cmd->add_option("--elements", elements, "Comma-separated elements, e.g. 31,13");
    sweep_cmd->add_option("--out", out_path, "Output file (default stdout)");

    double kappa = 5.0;
    double gc_max = 15.0;
    std::size_t fig2_points = 300;
    std::string fig2_ga = "1,5";
    std::string fig2_gm = "0.005,1,2";
    std::string fig2_out;
    auto* fig2 = app.add_subcommand("fig2", "|T31(0)| versus G_c under the nonreciprocal conditions");
    fig2->add_option("--out", fig2_out, "Output file (default stdout)");
    fig2->add_option("--kappa", kappa, "Cavity damping for a, c, d (MHz)");
    fig2->add_option("--gc-max", gc_max, "Largest G_c (MHz)");
    fig2->add_option("--points", fig2_points, "Uniform G_c points on (0, gc-max]");
    fig2->add_option("--ga", fig2_ga, "Comma-separated G_a values (MHz)");
    fig2->add_option("--gm", fig2_gm, "Comma-separated gamma_m values (MHz)");

    double fig3_min = -25.0;
    double fig3_max = 25.0;
    std::size_t fig3_points = 5001;
    double fig3_gamma_m = 0.005;
    std::string fig3_ga = "1,5,10";
    std::string fig3_out;
    auto* fig3 = app.add_subcommand("fig3", "|T31(omega)| and |T13(omega)| at the forward optimum");
    fig3->add_option("--out", fig3_out, "Output file (default stdout)");
    fig3->add_option("--min", fig3_min, "Lowest probe frequency (MHz)");
    fig3->add_option("--max", fig3_max, "Highest probe frequency (MHz)");
    fig3->add_option("--points", fig3_points, "Grid points");
    fig3->add_option("--kappa", kappa, "Cavity damping for a, c, d (MHz)");
    fig3->add_option("--gamma-m", fig3_gamma_m, "Mechanical damping (MHz)");
    fig3->add_option("--ga", fig3_ga, "Comma-separated G_a values (MHz)");

    auto* stability_cmd = app.add_subcommand("stability", "Routh-Hurwitz conditions and eigenvalues of -iM");
    stability_cmd->add_option("config", config, "Config file")->required();
    stability_cmd->add_flag("--json", as_json, "Emit one JSON object");

    std::string direction = "forward";
    std::string emit_path;
    auto* optimize = app.add_subcommand("optimize", "Synthesize the nonreciprocal optimum for a config");
    optimize->add_option("config", config, "Config file")->required();
    optimize->add_option("--direction", direction, "forward or reverse");
    optimize->add_option("--emit-config", emit_path, "Write the completed config to this path");
    optimize->add_flag("--json", as_json, "Emit one JSON object");

    std::vector<std::string> argv_storage{"oemi"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (report->parsed()) return cmd_report(config, as_json, out, err);
        if (sweep_cmd->parsed()) {
            return cmd_sweep(config, omega_min, omega_max, points, elements, out_path, out, err);
        }
        if (fig2->parsed()) return cmd_fig2(fig2_out, kappa, gc_max, fig2_points, fig2_ga, fig2_gm, out);
        if (fig3->parsed()) {
            return cmd_fig3(fig3_out, fig3_min, fig3_max, fig3_points, kappa, fig3_gamma_m, fig3_ga, out);
        }
        if (stability_cmd->parsed()) return cmd_stability(config, as_json, out, err);
        if (optimize->parsed()) return cmd_optimize(config, direction, emit_path, as_json, out, err);
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitConfig;
}

} // namespace oemi::cli
