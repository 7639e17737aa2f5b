// capsim — combinatorial capability-growth simulator CLI.
//
// Subcommands:
//   run      simulate one (rho, r) configuration and write
//            trajectory.csv, analysis.json, panels.csv
//   sweep    run a rho x r grid and write per-cell outputs plus a
//            digest manifest
//   oracle   cross-check the analytic kernel against the exact rational
//            oracle and a Monte-Carlo estimate
//   analyze  re-run the trajectory analyses on an existing trajectory.csv

#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "capsim/config.hpp"
#include "capsim/experiment.hpp"
#include "capsim/version.hpp"

namespace {

constexpr const char* kUsage = R"(capsim — combinatorial capability-growth simulator

usage:
  capsim run     [--rho X] [--r R|inf] [--horizon N] [--seed S]
                 [--window-size W] [--out DIR] [--config FILE]
  capsim sweep   [--rho-values a,b,..] [--r-values x,y,..] [--horizon N]
                 [--seed S] [--window-size W] [--out DIR] [--config FILE]
  capsim oracle  [--n N] [--l L] [--r R|inf] [--rho X] [--replicates K]
                 [--seed S] [--out DIR] [--config FILE]
  capsim analyze TRAJECTORY_CSV [--r R|inf] [--window-size W] [--out DIR]

  capsim --help | --version

defaults: rho=0.5 r=inf horizon=150 seed=42 window-size=10
          replicates=20000 out=out
          rho-values=0.25,0.5,0.75 r-values=inf,25,20,10,1

oracle exits 0 only when the kernel matches the exact oracle to 1e-10
relative and sits within 4 standard errors of the Monte-Carlo mean
(pass --replicates 0 to skip the sampling check, e.g. for 24 < n <= 64).
)";

int cmd_run(const std::vector<std::string>& flags) {
    capsim::CliConfig cfg = capsim::parse_config(flags);
    capsim::RunOutputs outputs =
        capsim::run_command(cfg.params, cfg.window_size, cfg.out_dir);
    std::printf("run: rho=%g r=%s horizon=%d -> %s\n", cfg.params.rho,
                cfg.params.window_radius.str().c_str(), cfg.params.horizon,
                outputs.dir.string().c_str());
    return 0;
}

int cmd_sweep(const std::vector<std::string>& flags) {
    capsim::CliConfig cfg = capsim::parse_config(flags);
    capsim::SweepSpec spec = cfg.sweep_spec();
    capsim::OrderedJson manifest = capsim::sweep_command(spec);
    int failures = 0;
    for (const auto& cell : manifest["cells"]) {
        if (cell["status"] != "ok") ++failures;
    }
    std::printf("sweep: %zu cells -> %s (%d failed)\n", manifest["cells"].size(),
                (std::filesystem::path(spec.out_dir) / capsim::kManifestFile).string().c_str(),
                failures);
    return failures == 0 ? 0 : 1;
}

int cmd_oracle(const std::vector<std::string>& flags) {
    capsim::CliConfig cfg = capsim::parse_config(flags);
    if (cfg.replicates >= 2 && cfg.n > capsim::kMaxBookN) {
        throw std::invalid_argument("n: sampling path requires n <= " +
                                    std::to_string(capsim::kMaxBookN) +
                                    "; pass --replicates 0 for the exact-only check");
    }
    capsim::OracleCheck check =
        capsim::oracle_check_command(cfg.n, cfg.l, cfg.params.window_radius, cfg.params.rho,
                                     cfg.replicates, cfg.params.seed);
    std::filesystem::create_directories(cfg.out_dir);
    auto path = std::filesystem::path(cfg.out_dir) / "oracle_report.json";
    capsim::write_file(path, check.report.dump(2) + "\n");
    std::printf("oracle: %s -> %s\n", check.pass ? "PASS" : "FAIL", path.string().c_str());
    return check.pass ? 0 : 1;
}

int cmd_analyze(const std::vector<std::string>& flags) {
    // First non-flag token is the input file; everything else goes through
    // the shared parser.
    std::optional<std::string> csv_path;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        const std::string& f = flags[i];
        if (f.rfind("--", 0) != 0 && !csv_path) {
            csv_path = f;
            continue;
        }
        rest.push_back(f);
        if (f.rfind("--", 0) == 0 && f.find('=') == std::string::npos && i + 1 < flags.size()) {
            rest.push_back(flags[++i]);
        }
    }
    if (!csv_path) throw std::invalid_argument("analyze: missing TRAJECTORY_CSV argument");

    // Tell explicit --r / --out apart from their defaults.
    bool r_given = false;
    bool out_given = false;
    for (const auto& f : rest) {
        if (f == "--r" || f.rfind("--r=", 0) == 0) r_given = true;
        if (f == "--out" || f.rfind("--out=", 0) == 0) out_given = true;
    }
    capsim::CliConfig cfg = capsim::parse_config(rest);
    std::optional<capsim::WindowRadius> r_flag;
    if (r_given) r_flag = cfg.params.window_radius;

    capsim::AnalyzeResult result =
        capsim::analyze_command(*csv_path, r_flag, cfg.window_size);
    std::filesystem::path out_dir =
        out_given ? std::filesystem::path(cfg.out_dir)
                  : std::filesystem::path(*csv_path).parent_path();
    if (out_dir.empty()) out_dir = ".";
    std::filesystem::create_directories(out_dir);
    auto path = out_dir / capsim::kAnalysisFile;
    capsim::write_file(path, result.report.dump(2) + "\n");
    std::printf("analyze: %zu steps -> %s\n", result.trajectory.steps.size(),
                path.string().c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
        std::fputs(kUsage, stdout);
        return args.empty() ? 2 : 0;
    }
    if (args[0] == "--version") {
        std::printf("capsim %s\n", capsim::kVersion);
        return 0;
    }
    const std::string command = args[0];
    std::vector<std::string> flags(args.begin() + 1, args.end());
    try {
        if (command == "run") return cmd_run(flags);
        if (command == "sweep") return cmd_sweep(flags);
        if (command == "oracle") return cmd_oracle(flags);
        if (command == "analyze") return cmd_analyze(flags);
        std::fprintf(stderr, "capsim: unknown command '%s'\n\n%s", command.c_str(), kUsage);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "capsim %s: %s\n", command.c_str(), e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "capsim %s: %s\n", command.c_str(), e.what());
        return 1;
    }
}
