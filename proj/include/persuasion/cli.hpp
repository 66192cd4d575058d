#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "persuasion/game_model.hpp"
#include "persuasion/verifier.hpp"

namespace persuasion::cli {

enum ExitStatus : int { kOk = 0, kViolations = 1, kInvalidInput = 2, kRegimeMismatch = 3 };

enum class Format { Json, Csv };

enum class Command { Analyze, Solve, Verify, Bench, Wald, Curves };

const char* to_string(Command c);
std::optional<Command> parse_command(const std::string& name);

/// Which equilibrium `solve` should produce. Auto picks by regime.
enum class Equilibrium { Auto, Separating, Pooling, Uninformative };

struct Options {
    Command command = Command::Analyze;
    std::string config_path;
    std::string config_text;  ///< used when config_path is empty
    std::string profile_path;  ///< verify: profile document; defaults to the config document
    std::string out_path;
    Format format = Format::Json;
    int grid = 201;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    std::uint64_t paths = 1'000'000;
    unsigned threads = 0;
    Equilibrium equilibrium = Equilibrium::Auto;

    // wald
    double alpha = 0.6;
    double c_g = 1.0;
    double c_b = 1.0;
    int n_bar = 1;
    int n_low = -1;
    double mu0 = 0.5;

    // curves: experiment the indifference curves pass through
    std::optional<double> p;
    std::optional<double> q;
    int samples = 101;
};

struct LoadResult {
    std::optional<GameConfig> config;
    std::vector<ConfigError> errors;

    bool ok() const { return config.has_value(); }
};

/// Parses a config document and validates it. Parse errors carry line and
/// column; field errors are all collected before returning.
LoadResult load_config(const std::string& text);
LoadResult load_config_file(const std::string& path);

/// Reads the "profile" array ([{p, q}, ...]) of a document.
StrategyProfile load_profile(const std::string& text, std::size_t n_types);

struct RunResult {
    int status = kOk;
    std::string output;  ///< document written to --out or stdout
    std::string error;   ///< diagnostics for stderr
};

RunResult run(const Options& opts);

}  // namespace persuasion::cli
