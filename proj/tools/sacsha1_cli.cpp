// Command-line front end for the SHA-1 strict-avalanche-criterion toolkit.
//
// Exit codes: 0 success, 2 usage error, 3 I/O error, 4 validation failure.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sacsha1/bundle.hpp"
#include "sacsha1/ingest.hpp"
#include "sacsha1/nist.hpp"
#include "sacsha1/reports.hpp"
#include "sacsha1/sha1.hpp"
#include "sacsha1/stats.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitValidation = 4;

int cmd_sample_size(double confidence, double moe) {
    std::cout << sac::stats::sample_size({confidence, moe}) << "\n";
    return kExitOk;
}

int cmd_validate(const std::filesystem::path& vectors_dir) {
    std::size_t passed = 0, failed = 0;

    // Reference digests from FIPS 180-1 and its companion examples.
    struct Known {
        const char* label;
        const char* message;
        const char* digest;
    };
    static const Known known[] = {
        {"builtin:abc", "abc", "a9993e364706816aba3e25717850c26c9cd0d89d"},
        {"builtin:empty", "", "da39a3ee5e6b4b0d3255bfef95601890afd80709"},
        {"builtin:two-block", "abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq",
         "84983e441c3bd26ebaae4aa1f95129e5e54670f1"},
    };
    for (const auto& k : known) {
        const std::string actual = sac::sha1(std::string(k.message)).hex();
        const bool ok = (actual == k.digest);
        std::cout << (ok ? "PASS " : "FAIL ") << k.label << "\n";
        ok ? ++passed : ++failed;
    }

    if (!std::filesystem::is_directory(vectors_dir)) {
        std::cerr << "error: vector directory not found: " << vectors_dir.string() << "\n";
        return kExitIo;
    }
    std::vector<std::filesystem::path> rsp_files;
    for (const auto& entry : std::filesystem::directory_iterator(vectors_dir)) {
        if (entry.path().extension() == ".rsp") rsp_files.push_back(entry.path());
    }
    std::sort(rsp_files.begin(), rsp_files.end());
    if (rsp_files.empty()) {
        std::cerr << "error: no .rsp files under " << vectors_dir.string() << "\n";
        return kExitIo;
    }
    for (const auto& path : rsp_files) {
        const auto results = sac::nist::run_vectors(path);
        if (results.empty()) {
            std::cout << "FAIL " << path.filename().string() << ": no vectors\n";
            ++failed;
            continue;
        }
        std::size_t file_failed = 0;
        for (const auto& r : results) {
            if (!r.passed) {
                ++file_failed;
                std::cout << "FAIL " << r.file << " Len=" << r.bit_length << " expected "
                          << r.expected << " got " << r.actual << "\n";
            }
        }
        std::cout << (file_failed == 0 ? "PASS " : "FAIL ") << path.filename().string()
                  << ": " << (results.size() - file_failed) << "/" << results.size()
                  << " vectors\n";
        passed += results.size() - file_failed;
        failed += file_failed;
    }
    std::cout << "total: " << passed << " passed, " << failed << " failed\n";
    return failed == 0 ? kExitOk : kExitValidation;
}

int cmd_run(const sac::RunConfig& config) {
    const sac::ResultBundle bundle = sac::run_experiment(config);
    sac::save_bundle(bundle, config.output_dir);
    std::cout << "samples " << bundle.matrix.samples << "\n"
              << "trials " << bundle.matrix.trials << "\n"
              << "bundle " << (config.output_dir / "bundle.txt").string() << "\n";
    return kExitOk;
}

sac::reports::RoundRange parse_rounds(const std::string& spec) {
    const auto dots = spec.find("..");
    if (dots == std::string::npos) {
        throw CLI::ValidationError("--rounds", "expected LO..HI");
    }
    sac::reports::RoundRange range;
    range.lo = std::stoul(spec.substr(0, dots));
    range.hi = std::stoul(spec.substr(dots + 2));
    range.validate();
    return range;
}

void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& writer) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    writer(out);
    if (!out) throw std::runtime_error("write failure: " + path.string());
    std::cout << path.string() << "\n";
}

int cmd_report(const std::string& kind, const std::filesystem::path& from,
               const std::filesystem::path& out_dir, const std::string& rounds_spec,
               std::size_t buckets, bool per_round) {
    if (kind == "toy") {
        std::cout << sac::reports::toy_table();
        return kExitOk;
    }
    if (kind != "heatmap" && kind != "summary" && kind != "histogram" && kind != "qq") {
        std::cerr << "error: unknown report kind: " << kind << "\n";
        return kExitUsage;
    }
    const sac::ResultBundle bundle = sac::load_bundle(from);

    sac::reports::RoundRange range;
    if (!rounds_spec.empty()) {
        range = parse_rounds(rounds_spec);
    } else if (kind == "histogram" || kind == "qq") {
        range = {24, 80};  // default to the stable rounds
    }

    std::filesystem::create_directories(out_dir);
    if (kind == "heatmap") {
        write_file(out_dir / "heatmap.csv", [&](std::ostream& os) {
            sac::reports::write_heatmap_csv(bundle, range, os);
        });
    } else if (kind == "summary") {
        write_file(out_dir / "summary.csv", [&](std::ostream& os) {
            sac::reports::write_summary_csv(bundle, range, os);
        });
    } else if (kind == "histogram") {
        write_file(out_dir / "histogram.csv", [&](std::ostream& os) {
            sac::reports::write_histogram_csv(bundle, range, buckets, os);
        });
        if (per_round) {
            for (std::size_t r = range.lo; r <= range.hi; ++r) {
                char name[32];
                std::snprintf(name, sizeof(name), "histogram_round_%02zu.csv", r);
                write_file(out_dir / name, [&](std::ostream& os) {
                    sac::reports::write_histogram_csv(bundle, {r, r}, buckets, os);
                });
            }
        }
    } else {
        for (const auto family : {sac::stats::Family::kNormal, sac::stats::Family::kLognormal,
                                  sac::stats::Family::kWeibull}) {
            write_file(out_dir / ("qq_" + sac::stats::family_name(family) + ".csv"),
                       [&](std::ostream& os) {
                           sac::reports::write_qq_csv(bundle, family, range, os);
                       });
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strict-avalanche-criterion analysis of the SHA-1 compression function"};
    app.require_subcommand(1);

    // sample-size
    double confidence = 0.99, moe = 0.01;
    auto* size_cmd = app.add_subcommand("sample-size", "Required sample count for a target "
                                                       "confidence and margin of error");
    size_cmd->add_option("--confidence", confidence, "Confidence level in (0,1)");
    size_cmd->add_option("--moe", moe, "Margin of error in (0,1)");

    // validate
    std::filesystem::path vectors_dir = "tests/data/vectors";
    auto* validate_cmd =
        app.add_subcommand("validate", "Run NIST byte-oriented .rsp vectors through sha1");
    validate_cmd->add_option("--vectors", vectors_dir, "Directory of .rsp files");

    // run
    sac::RunConfig config;
    std::string seed_hex;
    std::vector<std::string> input_files;
    auto* run_cmd = app.add_subcommand("run", "Accumulate flip statistics over samples");
    run_cmd->add_option("--samples", config.sample_count, "Number of samples")->required();
    run_cmd->add_option("--input", input_files, "Raw binary corpus files, consumed in order");
    run_cmd->add_option("--seed", seed_hex, "Hex seed for the deterministic generator");
    run_cmd->add_option("--out", config.output_dir, "Output directory")->required();
    run_cmd->add_option("--workers", config.worker_count, "Worker thread count")
        ->check(CLI::PositiveNumber);

    // report
    std::string kind, rounds_spec, out_override;
    std::size_t buckets = 672;
    bool per_round = false;
    auto* report_cmd = app.add_subcommand("report", "Emit plot-ready data from a saved run");
    std::filesystem::path from_dir;
    report_cmd->add_option("kind", kind, "heatmap|summary|histogram|qq|toy")->required();
    report_cmd->add_option("--from", from_dir, "Bundle directory");
    report_cmd->add_option("--rounds", rounds_spec, "Round range LO..HI (1-based)");
    report_cmd->add_option("--out", out_override, "Output directory (default: --from)");
    report_cmd->add_option("--buckets", buckets, "Histogram bucket count");
    report_cmd->add_flag("--per-round", per_round, "Also emit per-round histogram files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (size_cmd->parsed()) return cmd_sample_size(confidence, moe);
        if (validate_cmd->parsed()) return cmd_validate(vectors_dir);
        if (run_cmd->parsed()) {
            if (input_files.empty() == seed_hex.empty()) {
                std::cerr << "error: exactly one of --input and --seed is required\n";
                return kExitUsage;
            }
            for (const auto& f : input_files) config.input_files.emplace_back(f);
            if (!seed_hex.empty()) config.seed = std::stoull(seed_hex, nullptr, 16);
            return cmd_run(config);
        }
        if (report_cmd->parsed()) {
            if (kind != "toy" && from_dir.empty()) {
                std::cerr << "error: report requires --from\n";
                return kExitUsage;
            }
            const std::filesystem::path out_dir =
                out_override.empty() ? from_dir : std::filesystem::path(out_override);
            return cmd_report(kind, from_dir, out_dir, rounds_spec, buckets, per_round);
        }
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
