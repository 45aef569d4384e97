// Batch front-end: parameter sweeps, threshold finding, verification suites,
// spectra, and stabilizer-code CI, exported as CSV/JSON.
//
// Exit codes: 0 success, 1 invalid configuration, 2 computation-level
// failure (non-bracketing search, clamp budget, degenerate inputs),
// 3 verification failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"

#include "toricci/ci_engine.hpp"
#include "toricci/lattice.hpp"
#include "toricci/majorana.hpp"
#include "toricci/spin_oracle.hpp"
#include "toricci/stabilizer.hpp"
#include "toricci/sweep_io.hpp"
#include "toricci/verify.hpp"
#include "toricci/version.hpp"

using namespace toricci;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitComputation = 2;
constexpr int kExitVerification = 3;

/// Clamped samples above one per mille indicate a biased average; treat the
/// run as failed rather than report a silently skewed number.
constexpr double kClampBudget = 1e-3;

struct OutputTarget {
    std::string path = "-";
    std::string format = "csv";

    void write(const SweepResult& result, const std::string& config_echo,
               double wall_time_s) const {
        std::ofstream file;
        std::ostream* out = &std::cout;
        if (path != "-") {
            file.open(path, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open " + path);
            out = &file;
        }
        if (format == "csv")
            write_csv(*out, result);
        else
            write_json(*out, result, config_echo, wall_time_s);
    }
};

std::string echo_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

void check_clamp_budget(const CiEstimate& est) {
    if (est.n_clamped > kClampBudget * double(est.n_samples))
        throw ComputationError(
            "clamp budget exceeded: " + std::to_string(est.n_clamped) + " of " +
            std::to_string(est.n_samples) + " samples");
}

struct SweepConfig {
    std::string quantity = "ci";
    std::string sizes = "4";
    std::string p_grid = "0.05:0.15:11";
    long samples = 1000;
    std::uint64_t seed = 1;
    int workers = 0;
    bool exhaustive = false;
    std::string hopping = "t1";
    OutputTarget out;
};

int run_sweep(const SweepConfig& cfg, const std::string& echo) {
    const auto t0 = std::chrono::steady_clock::now();
    const Quantity quantity = quantity_from_name(cfg.quantity);
    const auto sizes = parse_int_list(cfg.sizes);
    const auto grid = parse_grid(cfg.p_grid);
    const FugacityHopping hopping = cfg.hopping == "t2"
                                        ? FugacityHopping::t2
                                        : FugacityHopping::t1;
    SweepResult result;
    for (int l : sizes) {
        const TorusLattice lat(l, l);
        for (double p : grid) {
            SweepRow row;
            row.quantity = cfg.quantity;
            row.lx = row.ly = l;
            row.p = p;
            row.seed = cfg.seed;
            switch (quantity) {
                case Quantity::renyi2:
                    row.mean = renyi2_ci(lat, p);
                    row.n_samples = 1;
                    row.seed = 0;
                    break;
                case Quantity::ci: {
                    const CiEstimate est =
                        cfg.exhaustive
                            ? exhaustive_coherent_information(lat, p)
                            : coherent_information(lat, p, cfg.samples,
                                                   cfg.seed, cfg.workers);
                    check_clamp_budget(est);
                    row.mean = est.mean;
                    row.std_err = est.std_err;
                    row.n_samples = est.n_samples;
                    row.n_clamped = est.n_clamped;
                    break;
                }
                case Quantity::fugacity: {
                    const CiEstimate est = vortex_fugacity(
                        lat, p, cfg.samples, cfg.seed, cfg.workers, hopping);
                    check_clamp_budget(est);
                    row.mean = est.mean;
                    row.std_err = est.std_err;
                    row.n_samples = est.n_samples;
                    row.n_clamped = est.n_clamped;
                    break;
                }
                case Quantity::mstop: {
                    const CiEstimate est =
                        mstop(lat, p, cfg.samples, cfg.seed, cfg.workers);
                    check_clamp_budget(est);
                    row.mean = est.mean;
                    row.std_err = est.std_err;
                    row.n_samples = est.n_samples;
                    row.n_clamped = est.n_clamped;
                    break;
                }
            }
            result.rows.push_back(std::move(row));
        }
    }
    result.sort_rows();
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    cfg.out.write(result, echo, wall);
    return kExitOk;
}

struct ThresholdConfig {
    std::string quantity = "ci";
    std::string sizes = "8,12";
    double p_lo = 0.09, p_hi = 0.13;
    long samples = 2000;
    std::uint64_t seed = 1;
    double tol = 1e-3;
    int workers = 0;
};

int run_threshold(const ThresholdConfig& cfg) {
    const Quantity quantity = quantity_from_name(cfg.quantity);
    const auto sizes = parse_int_list(cfg.sizes);
    if (sizes.empty() || sizes.size() > 2)
        throw CLI::ValidationError("--l needs one size (renyi2) or two");
    const TorusLattice lat_a(sizes.front(), sizes.front());
    const TorusLattice lat_b(sizes.back(), sizes.back());
    const ThresholdEstimate est =
        find_threshold(lat_a, lat_b, quantity, cfg.p_lo, cfg.p_hi, cfg.samples,
                       cfg.seed, cfg.tol, cfg.workers);
    std::printf("quantity      %s\n", quantity_name(quantity));
    std::printf("sizes         %d %d\n", sizes.front(), sizes.back());
    std::printf("p_c           %.8f\n", est.p_c);
    std::printf("uncertainty   %.2e\n", est.error);
    std::printf("probes        %zu%s\n", est.probes.size(),
                est.statistically_limited ? " (noise-limited)" : "");
    for (const auto& pr : est.probes)
        std::printf("  p %-12.8f diff %-14.6g +/- %.3g\n", pr.p, pr.diff,
                    pr.diff_err);
    return kExitOk;
}

struct SpectrumConfig {
    int l = 16;
    std::string sector = "PP";
    std::string t_grid = "0.38:0.45:15";
    OutputTarget out;
};

int run_spectrum(const SpectrumConfig& cfg) {
    const TorusLattice lat(cfg.l, cfg.l);
    const Sector sector = sector_from_name(cfg.sector);
    const GaugeConfig one = GaugeConfig::uniform(lat);
    std::ostringstream body;
    body << "t";
    for (int i = 0; i < 4 * lat.n_sites(); ++i) body << ",lambda_" << i + 1;
    body << "\n";
    for (double t : parse_grid(cfg.t_grid)) {
        const auto ev =
            spectrum(build_hamiltonian({&lat, t, one, sector}));
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", t);
        body << buf;
        for (double v : ev) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            body << ',' << buf;
        }
        body << "\n";
    }
    if (cfg.out.path == "-") {
        std::cout << body.str();
    } else {
        std::ofstream file(cfg.out.path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open " + cfg.out.path);
        file << body.str();
    }
    return kExitOk;
}

struct StabilizerConfig {
    std::string code = "toric2x2";
    std::string code_file;
    std::string channel = "bitflip_phase";
    std::string p_grid = "0.0:0.2:11";
    int renyi = 0;  // 0 = von Neumann
    OutputTarget out;
};

StabilizerCode builtin_code(const std::string& name, int& lx, int& ly) {
    if (name == "toric2x2") {
        lx = ly = 2;
        return toric_code(2, 2);
    }
    if (name == "qubit" || name == "surface_d1" || name == "color_d1") {
        lx = ly = 1;
        return single_qubit_code();
    }
    if (name == "surface_d3") {
        lx = ly = 3;
        return rotated_surface_code(3);
    }
    if (name == "color_d3") {
        lx = ly = 3;
        return color_code_488(3);
    }
    if (name == "color_d5") {
        lx = ly = 5;
        return color_code_488(5);
    }
    throw CLI::ValidationError("unknown code: " + name);
}

int run_stabilizer_ci(const StabilizerConfig& cfg, const std::string& echo) {
    const auto t0 = std::chrono::steady_clock::now();
    int lx = 0, ly = 0;
    StabilizerCode code;
    std::string label;
    if (!cfg.code_file.empty()) {
        code = load_code_file(cfg.code_file);
        lx = ly = 0;
        label = "file";
    } else {
        code = builtin_code(cfg.code, lx, ly);
        label = cfg.code;
    }
    const ChannelKind kind = channel_from_name(cfg.channel);
    SweepResult result;
    for (double p : parse_grid(cfg.p_grid)) {
        SweepRow row;
        row.quantity = (cfg.renyi ? "renyi" + std::to_string(cfg.renyi) + "_ci:"
                                  : "exact_ci:") +
                       label + ":" + cfg.channel;
        row.lx = lx;
        row.ly = ly;
        row.p = p;
        row.mean = cfg.renyi ? renyi_ci(code, {kind, p}, cfg.renyi)
                             : exact_ci(code, {kind, p});
        row.n_samples = 1;
        result.rows.push_back(std::move(row));
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    cfg.out.write(result, echo, wall);
    return kExitOk;
}

struct VerifyConfig {
    std::string level = "fast";
    bool flip_intra_sign = false;
    int workers = 0;
};

int run_verify(const VerifyConfig& cfg) {
    VerifyOptions opts;
    opts.level = cfg.level == "full" ? VerifyLevel::Full : VerifyLevel::Fast;
    opts.flip_intra_sign = cfg.flip_intra_sign;
    opts.workers = cfg.workers;
    const auto checks = run_verification(opts);
    int failed = 0;
    for (const auto& c : checks) {
        std::printf("[%s] %-44s %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                    c.detail.c_str());
        if (!c.pass) ++failed;
    }
    if (failed) {
        std::printf("%d of %zu checks FAILED\n", failed, checks.size());
        return kExitVerification;
    }
    std::printf("all %zu checks passed\n", checks.size());
    return kExitOk;
}

void attach_output(CLI::App* cmd, OutputTarget& out) {
    cmd->add_option("--out", out.path, "Output path, or - for stdout");
    cmd->add_option("--format", out.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherent information of the decohered toric code"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    SweepConfig sweep;
    auto* sweep_cmd =
        app.add_subcommand("sweep", "Sweep a quantity over sizes and rates");
    sweep_cmd->add_option("--quantity", sweep.quantity,
                          "ci, renyi2, fugacity or mstop");
    sweep_cmd->add_option("--l", sweep.sizes, "Comma-separated square sizes");
    sweep_cmd->add_option("--p", sweep.p_grid,
                          "Rate grid: min:max:steps or explicit list");
    sweep_cmd->add_option("--samples", sweep.samples, "Disorder samples");
    sweep_cmd->add_option("--seed", sweep.seed, "Sampling seed");
    sweep_cmd->add_option("--workers", sweep.workers,
                          "Worker threads (default: TORICCI_WORKERS or hardware)");
    sweep_cmd->add_flag("--exhaustive", sweep.exhaustive,
                        "Enumerate all gauge configs (n_sites <= 6)");
    sweep_cmd->add_option("--hopping", sweep.hopping,
                          "Fugacity hopping: t1 (default) or t2")
        ->check(CLI::IsMember({"t1", "t2"}));
    attach_output(sweep_cmd, sweep.out);

    ThresholdConfig thr;
    auto* thr_cmd =
        app.add_subcommand("threshold", "Locate a crossing or zero in p");
    thr_cmd->add_option("--quantity", thr.quantity,
                        "ci, renyi2, fugacity or mstop");
    thr_cmd->add_option("--l", thr.sizes,
                        "Two sizes for crossings, one for renyi2");
    thr_cmd->add_option("--p-lo", thr.p_lo, "Lower bracket");
    thr_cmd->add_option("--p-hi", thr.p_hi, "Upper bracket");
    thr_cmd->add_option("--samples", thr.samples, "Samples per probe");
    thr_cmd->add_option("--seed", thr.seed, "Base seed");
    thr_cmd->add_option("--tol", thr.tol, "Bracket width target");
    thr_cmd->add_option("--workers", thr.workers, "Worker threads");

    SpectrumConfig spec;
    auto* spec_cmd = app.add_subcommand(
        "spectrum", "Clean-model eigenvalues over a hopping grid");
    spec_cmd->add_option("--l", spec.l, "Square lattice size");
    spec_cmd->add_option("--sector", spec.sector, "PP, PA, AP or AA");
    spec_cmd->add_option("--t", spec.t_grid, "Hopping grid min:max:steps");
    attach_output(spec_cmd, spec.out);

    StabilizerConfig stab;
    auto* stab_cmd = app.add_subcommand(
        "stabilizer-ci", "Exact CI of built-in or fixture stabilizer codes");
    stab_cmd->add_option(
        "--code", stab.code,
        "toric2x2, qubit, surface_d1, surface_d3, color_d1, color_d3, color_d5");
    stab_cmd->add_option("--code-file", stab.code_file,
                         "Load a code fixture file instead of a built-in");
    stab_cmd->add_option("--channel", stab.channel,
                         "bitflip, phase, bitflip_phase or depolarizing");
    stab_cmd->add_option("--p", stab.p_grid, "Rate grid");
    stab_cmd->add_option("--renyi", stab.renyi,
                         "Renyi index (2 or 3) instead of von Neumann")
        ->check(CLI::IsMember({0, 2, 3}));
    attach_output(stab_cmd, stab.out);

    VerifyConfig ver;
    auto* ver_cmd =
        app.add_subcommand("verify", "Run the cross-oracle verification suite");
    ver_cmd->add_option("--level", ver.level, "fast or full")
        ->check(CLI::IsMember({"fast", "full"}));
    ver_cmd
        ->add_flag("--debug-flip-intra-sign", ver.flip_intra_sign,
                   "Corrupt one intra-cell coupling sign (mutation test)")
        ->group("");  // hidden
    ver_cmd->add_option("--workers", ver.workers, "Worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    const std::string echo = echo_args(argc, argv);
    try {
        if (*sweep_cmd) return run_sweep(sweep, echo);
        if (*thr_cmd) return run_threshold(thr);
        if (*spec_cmd) return run_spectrum(spec);
        if (*stab_cmd) return run_stabilizer_ci(stab, echo);
        if (*ver_cmd) return run_verify(ver);
    } catch (const ComputationError& e) {
        std::fprintf(stderr, "computation failed: %s\n", e.what());
        return kExitComputation;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid configuration: %s\n", e.what());
        return kExitConfig;
    } catch (const CLI::Error& e) {
        std::fprintf(stderr, "invalid configuration: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitComputation;
    }
    return kExitConfig;
}
