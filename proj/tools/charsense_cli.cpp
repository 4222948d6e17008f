// charsense command-line driver.
//
// Subcommands: build, verify, spectra, recover, recover-noisy. Flags can
// also come from a key=value config file (--config); command-line flags win.
// Worker count is taken from the CHARSENSE_WORKERS environment variable.
// Exit codes: 0 success, 1 validation, 2 invariant violation, 3 I/O.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "charsense/commands.hpp"
#include "charsense/errors.hpp"

namespace {

using charsense::RunConfig;
using charsense::ValidationError;

// "a,b,c" or "a..b" (inclusive).
std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const std::int64_t lo = std::stoll(text.substr(0, dots));
        const std::int64_t hi = std::stoll(text.substr(dots + 2));
        for (std::int64_t v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(std::stoll(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

// "a,b,c" or "lo..hi:step" (step defaults to 5).
std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const double lo = std::stod(text.substr(0, dots));
        std::string rest = text.substr(dots + 2);
        double step = 5.0, hi = 0.0;
        const auto colon = rest.find(':');
        if (colon != std::string::npos) {
            hi = std::stod(rest.substr(0, colon));
            step = std::stod(rest.substr(colon + 1));
        } else {
            hi = std::stod(rest);
        }
        for (double v = lo; v <= hi + 1e-12; v += step) out.push_back(v);
        return out;
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(std::stod(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

// key=value lines; blank lines and #comments ignored.
std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file " + path);
    std::map<std::string, std::string> entries;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (!key.empty()) entries[key] = value;
    }
    return entries;
}

struct CliState {
    CLI::App* cmd = nullptr;
    RunConfig config;
    int h = 2;
    std::int64_t d = 2;
    std::string r_text;
    std::string s_text;
    std::string snr_text;
    std::string out_text = ".";
    std::string poly_text;
    std::string config_path;
    bool lazy = false;
    bool dense = false;
};

void add_common_options(CLI::App* cmd, CliState& state) {
    state.cmd = cmd;
    cmd->add_option("--p", state.config.p, "field characteristic (odd prime)");
    cmd->add_option("--m", state.config.m, "extension degree");
    cmd->add_option("--h", state.h, "number of exponents (columns N = K^h)");
    cmd->add_option("--d", state.d, "largest exponent");
    cmd->add_option("--r", state.r_text, "exponent list r1..rh, e.g. 1,2");
    cmd->add_option("--seed", state.config.seed, "experiment seed");
    cmd->add_option("--trials", state.config.trials, "trials per condition");
    cmd->add_option("--s", state.s_text, "sparsity levels: list 1,2,3 or range 1..10");
    cmd->add_option("--snr", state.snr_text, "SNR grid in dB: list or lo..hi:step");
    cmd->add_option("--out", state.out_text, "output directory");
    cmd->add_option("--poly", state.poly_text,
                    "primitive polynomial, constant term first, e.g. 2,0,0,1,1");
    cmd->add_flag("--lazy", state.lazy, "force lazy column generation");
    cmd->add_flag("--dense", state.dense, "force dense storage");
    cmd->add_option("--max-iter", state.config.max_iterations,
                    "matching pursuit iteration cap");
    cmd->add_option("--cap", state.config.field_cap, "field size cap (p^m limit)");
    cmd->add_option("--config", state.config_path,
                    "key=value config file (flags take precedence)");
}

// Applies config-file entries for flags not given on the command line.
void merge_config_file(CliState& state) {
    if (state.config_path.empty()) return;
    const auto entries = load_config_file(state.config_path);
    auto absent = [&](const char* flag) { return state.cmd->count(flag) == 0; };
    auto get = [&](const char* key) -> const std::string* {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };
    if (const auto* v = get("p"); v && absent("--p")) state.config.p = std::stoll(*v);
    if (const auto* v = get("m"); v && absent("--m")) state.config.m = std::stoi(*v);
    if (const auto* v = get("h"); v && absent("--h")) state.h = std::stoi(*v);
    if (const auto* v = get("d"); v && absent("--d")) state.d = std::stoll(*v);
    if (const auto* v = get("r"); v && absent("--r")) state.r_text = *v;
    if (const auto* v = get("seed"); v && absent("--seed"))
        state.config.seed = std::stoull(*v);
    if (const auto* v = get("trials"); v && absent("--trials"))
        state.config.trials = std::stoll(*v);
    if (const auto* v = get("s"); v && absent("--s")) state.s_text = *v;
    if (const auto* v = get("snr"); v && absent("--snr")) state.snr_text = *v;
    if (const auto* v = get("out"); v && absent("--out")) state.out_text = *v;
    if (const auto* v = get("poly"); v && absent("--poly")) state.poly_text = *v;
    if (const auto* v = get("max-iter"); v && absent("--max-iter"))
        state.config.max_iterations = std::stoi(*v);
    if (const auto* v = get("cap"); v && absent("--cap"))
        state.config.field_cap = std::stoll(*v);
    if (const auto* v = get("lazy"); v && absent("--lazy") && absent("--dense")) {
        if (*v == "true" || *v == "1")
            state.lazy = true;
        else if (*v == "false" || *v == "0")
            state.dense = true;
        else
            throw ValidationError("config key 'lazy' must be true/false");
    }
}

RunConfig finalize(CliState& state) {
    merge_config_file(state);
    RunConfig config = state.config;
    config.out_dir = state.out_text;
    if (!state.r_text.empty()) {
        config.exponents = parse_int_list(state.r_text);
    } else {
        // h and d alone describe the default ladder 1..h-1 plus d.
        config.exponents.clear();
        for (int i = 1; i < state.h; ++i) config.exponents.push_back(i);
        config.exponents.push_back(state.d);
    }
    if (!state.s_text.empty()) config.s_values = parse_int_list(state.s_text);
    if (!state.snr_text.empty()) config.snr_grid_db = parse_double_list(state.snr_text);
    if (!state.poly_text.empty()) config.poly = state.poly_text;
    if (state.lazy && state.dense)
        throw ValidationError("--lazy and --dense are mutually exclusive");
    if (state.lazy) config.lazy = true;
    if (state.dense) config.lazy = false;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic compressed-sensing matrices from additive character "
                 "sequences: construction, verification, and recovery experiments"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);

    CliState build_state, verify_state, spectra_state, recover_state, noisy_state;
    auto* build = app.add_subcommand("build", "construct and export the matrix");
    auto* verify = app.add_subcommand("verify", "coherence and tight-frame checks");
    auto* spectra = app.add_subcommand("spectra", "condition-number statistics");
    auto* recover = app.add_subcommand("recover", "noiseless recovery rates");
    auto* noisy = app.add_subcommand("recover-noisy", "noisy recovery rates");
    add_common_options(build, build_state);
    add_common_options(verify, verify_state);
    add_common_options(spectra, spectra_state);
    add_common_options(recover, recover_state);
    add_common_options(noisy, noisy_state);

    try {
        app.parse(argc, argv);
        if (build->parsed()) return charsense::cmd_build(finalize(build_state));
        if (verify->parsed()) return charsense::cmd_verify(finalize(verify_state));
        if (spectra->parsed()) return charsense::cmd_spectra(finalize(spectra_state));
        if (recover->parsed()) return charsense::cmd_recover(finalize(recover_state));
        if (noisy->parsed()) return charsense::cmd_recover_noisy(finalize(noisy_state));
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const charsense::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 3;
    } catch (const charsense::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return 2;
    } catch (const charsense::ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << '\n';
        return 2;
    } catch (const charsense::ValidationError& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
