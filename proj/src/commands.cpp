#include "charsense/commands.hpp"

#include <cstdio>
#include <iostream>
#include <memory>

#include <json.hpp>

#include "charsense/analysis.hpp"
#include "charsense/io.hpp"
#include "charsense/parallel.hpp"
#include "charsense/recovery.hpp"

namespace charsense {

namespace {

using nlohmann::json;

struct BuiltMatrix {
    ConstructionSpec spec;
    std::shared_ptr<const FieldContext> ctx;
    SensingMatrix matrix;
};

BuiltMatrix build_from_config(const RunConfig& config) {
    BuiltMatrix built;
    built.spec = ConstructionSpec::validated(config.p, config.m, config.exponents,
                                             config.field_cap);
    std::optional<PrimePoly> modulus;
    if (config.poly) modulus = PrimePoly::parse(config.p, *config.poly);
    built.ctx = std::make_shared<const FieldContext>(
        build_field(config.p, config.m, modulus, config.field_cap));
    Storage storage = Storage::Auto;
    if (config.lazy) storage = *config.lazy ? Storage::Lazy : Storage::Dense;
    built.matrix = build_matrix(built.spec, built.ctx, storage);
    return built;
}

json base_manifest(const RunConfig& config, const std::string& command) {
    json m;
    m["version"] = kVersion;
    m["command"] = command;
    m["p"] = config.p;
    m["m"] = config.m;
    m["r"] = config.exponents;
    m["seed"] = config.seed;
    m["trials"] = config.trials;
    m["max_iterations"] = config.max_iterations;
    m["field_cap"] = config.field_cap;
    if (config.poly) m["poly"] = *config.poly;
    if (config.lazy) m["lazy"] = *config.lazy;
    return m;
}

void write_manifest(const RunConfig& config, json manifest, OutputTracker& outputs) {
    const auto path = config.out_dir / "manifest.json";
    write_text_file(path, manifest.dump(2) + "\n");
    outputs.add(path);
}

void ensure_out_dir(const RunConfig& config) {
    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + config.out_dir.string());
}

std::vector<std::int64_t> default_s(const RunConfig& config,
                                    std::initializer_list<std::int64_t> fallback) {
    return config.s_values.empty() ? std::vector<std::int64_t>(fallback)
                                   : config.s_values;
}

std::vector<double> default_snr(const RunConfig& config) {
    if (!config.snr_grid_db.empty()) return config.snr_grid_db;
    std::vector<double> grid;
    for (double v = 0.0; v <= 40.0; v += 5.0) grid.push_back(v);
    return grid;
}

}  // namespace

int cmd_build(const RunConfig& config) {
    ensure_out_dir(config);
    OutputTracker outputs;
    try {
        const BuiltMatrix built = build_from_config(config);
        const auto path = config.out_dir / "matrix.txt";
        write_text_file(path, matrix_to_text(built.matrix));
        outputs.add(path);

        json manifest = base_manifest(config, "build");
        manifest["K"] = built.spec.field_size();
        manifest["N"] = built.spec.column_count();
        manifest["modulus"] = built.ctx->modulus().to_string();
        manifest["outputs"] = {"matrix.txt"};
        write_manifest(config, manifest, outputs);

        std::cout << "wrote " << path.string() << " (" << built.spec.field_size() << "x"
                  << built.spec.column_count() << ")\n";
        return 0;
    } catch (...) {
        outputs.discard_all();
        throw;
    }
}

int cmd_verify(const RunConfig& config) {
    ensure_out_dir(config);
    OutputTracker outputs;
    try {
        const BuiltMatrix built = build_from_config(config);
        const CoherenceReport report = coherence(built.matrix, config.workers);
        const FrameReport frame = frame_test(built.matrix);
        const SparsityBound sparsity = sparsity_bound(built.spec);

        const auto path = config.out_dir / "coherence.csv";
        write_text_file(path, coherence_csv(report, built.spec.field_size(),
                                            built.spec.column_count(), built.spec.d));
        outputs.add(path);

        json manifest = base_manifest(config, "verify");
        manifest["mu"] = report.mu;
        manifest["welch"] = report.welch;
        manifest["weil_prediction"] = report.weil_prediction;
        manifest["frame_max_deviation"] = frame.max_deviation;
        manifest["sparsity_bound"] = sparsity.bound;
        manifest["sparsity_guaranteed"] = sparsity.guaranteed;
        manifest["outputs"] = {"coherence.csv"};
        write_manifest(config, manifest, outputs);

        char mu_text[32];
        std::snprintf(mu_text, sizeof(mu_text), "%.6f", report.mu);
        std::cout << "mu=" << mu_text << " welch=" << format_short(report.welch)
                  << " ratio=" << format_short(report.mu / report.welch)
                  << " frame_dev=" << format_short(frame.max_deviation)
                  << " s_guaranteed=" << sparsity.guaranteed << '\n';

        if (report.mu > report.weil_prediction + 1e-9)
            throw InvariantViolation("coherence exceeds (d-1)/sqrt(K)");
        if (report.welch > report.mu)
            throw InvariantViolation("coherence fell below the Welch bound");
        if (frame.max_deviation >= 1e-8)
            throw InvariantViolation("tight-frame deviation out of tolerance");
        return 0;
    } catch (...) {
        outputs.discard_all();
        throw;
    }
}

int cmd_spectra(const RunConfig& config) {
    ensure_out_dir(config);
    OutputTracker outputs;
    try {
        const BuiltMatrix built = build_from_config(config);
        const auto s_values = default_s(config, {5, 10, 15, 20, 25, 30, 35, 40});

        std::vector<std::pair<std::string, SpectralStats>> rows;
        for (std::int64_t s : s_values) {
            rows.emplace_back("additive-character",
                              condition_stats(built.matrix, s, config.trials,
                                              config.seed, config.workers));
            rows.emplace_back("gaussian",
                              compare_with_gaussian(built.spec.field_size(), s,
                                                    config.trials, config.seed,
                                                    config.workers));
        }

        const auto path = config.out_dir / "condstats.csv";
        write_text_file(path, condstats_csv(rows));
        outputs.add(path);

        json manifest = base_manifest(config, "spectra");
        manifest["s"] = s_values;
        manifest["outputs"] = {"condstats.csv"};
        write_manifest(config, manifest, outputs);

        for (const auto& [family, stats] : rows)
            std::cout << family << " s=" << stats.s
                      << " cond_mean=" << format_short(stats.cond_mean)
                      << " cond_std=" << format_short(stats.cond_std) << '\n';
        return 0;
    } catch (...) {
        outputs.discard_all();
        throw;
    }
}

int cmd_recover(const RunConfig& config) {
    ensure_out_dir(config);
    OutputTracker outputs;
    try {
        const BuiltMatrix built = build_from_config(config);
        const auto s_values = default_s(config, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
        MpConfig mp;
        mp.max_iterations = config.max_iterations;
        mp.success_threshold = 1e-4;

        const auto ac = MatrixSource::fixed_matrix(built.matrix,
                                                   MatrixFamily::AdditiveCharacter);
        const auto pf = MatrixSource::fresh_partial_fourier(built.matrix.rows(),
                                                            built.matrix.cols());
        ExperimentReport report = run_noiseless_experiment(
            ac, s_values, config.trials, mp, config.seed, config.workers);
        const ExperimentReport pf_report = run_noiseless_experiment(
            pf, s_values, config.trials, mp, config.seed, config.workers);
        report.conditions.insert(report.conditions.end(), pf_report.conditions.begin(),
                                 pf_report.conditions.end());

        const auto path = config.out_dir / "recovery_noiseless.csv";
        write_text_file(path, recovery_noiseless_csv(report));
        outputs.add(path);

        json manifest = base_manifest(config, "recover");
        manifest["s"] = s_values;
        manifest["success_threshold"] = mp.success_threshold;
        manifest["outputs"] = {"recovery_noiseless.csv"};
        write_manifest(config, manifest, outputs);

        for (const auto& row : report.conditions)
            std::cout << row.family << " s=" << row.s
                      << " rate=" << format_short(row.success_rate) << '\n';
        return 0;
    } catch (...) {
        outputs.discard_all();
        throw;
    }
}

int cmd_recover_noisy(const RunConfig& config) {
    ensure_out_dir(config);
    OutputTracker outputs;
    try {
        const BuiltMatrix built = build_from_config(config);
        const auto s_values = default_s(config, {1, 2, 3});
        const auto snr_grid = default_snr(config);
        MpConfig mp;
        mp.max_iterations = config.max_iterations;
        mp.success_threshold = 1e-2;

        const auto ac = MatrixSource::fixed_matrix(built.matrix,
                                                   MatrixFamily::AdditiveCharacter);
        const auto pf = MatrixSource::fresh_partial_fourier(built.matrix.rows(),
                                                            built.matrix.cols());
        ExperimentReport report = run_noisy_experiment(
            ac, s_values, snr_grid, config.trials, mp, config.seed, config.workers);
        const ExperimentReport pf_report = run_noisy_experiment(
            pf, s_values, snr_grid, config.trials, mp, config.seed, config.workers);
        report.conditions.insert(report.conditions.end(), pf_report.conditions.begin(),
                                 pf_report.conditions.end());

        const auto path = config.out_dir / "recovery_noisy.csv";
        write_text_file(path, recovery_noisy_csv(report));
        outputs.add(path);

        json manifest = base_manifest(config, "recover-noisy");
        manifest["s"] = s_values;
        manifest["snr_db"] = snr_grid;
        manifest["success_threshold"] = mp.success_threshold;
        manifest["outputs"] = {"recovery_noisy.csv"};
        write_manifest(config, manifest, outputs);

        for (const auto& row : report.conditions)
            std::cout << row.family << " s=" << row.s << " snr=" << *row.snr_db
                      << " rate=" << format_short(row.success_rate) << '\n';
        return 0;
    } catch (...) {
        outputs.discard_all();
        throw;
    }
}

}  // namespace charsense
