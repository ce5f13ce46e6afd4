#ifndef SACSHA1_BUNDLE_HPP
#define SACSHA1_BUNDLE_HPP

// Persisted experiment results: the merged flip-count matrix, the exact
// per-(round, bit) distribution of per-input SAC numerators, and run
// metadata. Stored as a single versioned text file, `bundle.txt`, inside the
// run's output directory.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "sacsha1/avalanche.hpp"
#include "sacsha1/ingest.hpp"

namespace sac {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kConventionTag = "message-then-iv-msb-first";
inline constexpr const char* kBundleMagic = "sacsha1-bundle v1";

struct ResultBundle {
    FlipCountMatrix matrix;
    SacValueCounts value_counts;
    std::string source_description;
    std::string convention = kConventionTag;
    std::string tool_version = kToolVersion;

    bool operator==(const ResultBundle&) const = default;
};

inline void save_bundle(const ResultBundle& bundle, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto path = dir / "bundle.txt";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write bundle: " + path.string());

    out << kBundleMagic << "\n";
    out << "tool_version " << bundle.tool_version << "\n";
    out << "convention " << bundle.convention << "\n";
    out << "source " << bundle.source_description << "\n";
    out << "samples " << bundle.matrix.samples << "\n";
    out << "trials " << bundle.matrix.trials << "\n";
    out << "FLIPCOUNTS 80 32\n";
    for (std::size_t r = 0; r < kRounds; ++r) {
        for (std::size_t j = 0; j < kBitsPerWord; ++j) {
            out << bundle.matrix.flip_counts[r][j] << (j + 1 < kBitsPerWord ? ' ' : '\n');
        }
    }
    out << "VALUECOUNTS sparse\n";
    for (std::size_t r = 0; r < kRounds; ++r) {
        for (std::size_t j = 0; j < kBitsPerWord; ++j) {
            out << r << ' ' << j;
            for (std::size_t m = 0; m <= kInputBits; ++m) {
                const auto c = bundle.value_counts.at(r, j, m);
                if (c != 0) out << ' ' << m << ':' << c;
            }
            out << '\n';
        }
    }
    out << "END\n";
    if (!out) throw std::runtime_error("write failure: " + path.string());
}

inline ResultBundle load_bundle(const std::filesystem::path& dir) {
    const auto path = dir / "bundle.txt";
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read bundle: " + path.string());

    std::string line;
    if (!std::getline(in, line) || line != kBundleMagic) {
        throw std::runtime_error("not a recognized bundle file: " + path.string());
    }

    ResultBundle bundle;
    std::uint64_t samples = 0, trials = 0;
    while (std::getline(in, line)) {
        if (line.rfind("FLIPCOUNTS", 0) == 0) break;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        std::string rest;
        std::getline(ls, rest);
        if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
        if (key == "tool_version") bundle.tool_version = rest;
        else if (key == "convention") bundle.convention = rest;
        else if (key == "source") bundle.source_description = rest;
        else if (key == "samples") samples = std::stoull(rest);
        else if (key == "trials") trials = std::stoull(rest);
    }
    if (bundle.convention != kConventionTag) {
        throw std::runtime_error("bundle uses unknown input-ordering convention: " +
                                 bundle.convention);
    }
    for (std::size_t r = 0; r < kRounds; ++r) {
        for (std::size_t j = 0; j < kBitsPerWord; ++j) {
            if (!(in >> bundle.matrix.flip_counts[r][j])) {
                throw std::runtime_error("truncated FLIPCOUNTS section: " + path.string());
            }
        }
    }
    bundle.matrix.samples = samples;
    bundle.matrix.trials = trials;

    std::getline(in, line);  // rest of last counts line
    if (!std::getline(in, line) || line.rfind("VALUECOUNTS", 0) != 0) {
        throw std::runtime_error("missing VALUECOUNTS section: " + path.string());
    }
    while (std::getline(in, line) && line != "END") {
        std::istringstream ls(line);
        std::size_t r = 0, j = 0;
        if (!(ls >> r >> j) || r >= kRounds || j >= kBitsPerWord) {
            throw std::runtime_error("malformed VALUECOUNTS row: " + path.string());
        }
        std::string pair;
        while (ls >> pair) {
            const auto colon = pair.find(':');
            if (colon == std::string::npos) {
                throw std::runtime_error("malformed VALUECOUNTS entry: " + path.string());
            }
            const std::size_t m = std::stoull(pair.substr(0, colon));
            if (m > kInputBits) {
                throw std::runtime_error("VALUECOUNTS numerator out of range: " + path.string());
            }
            bundle.value_counts.at(r, j, m) = std::stoull(pair.substr(colon + 1));
        }
    }
    bundle.value_counts.samples = samples;
    return bundle;
}

struct RunConfig {
    std::uint64_t sample_count = 1;
    unsigned worker_count = 1;
    std::vector<std::filesystem::path> input_files;  // empty: deterministic mode
    std::uint64_t seed = 0;
    std::filesystem::path output_dir;
    unsigned round_floor = 24;  // first "stable" round for derived reports
};

// Fan-out over disjoint sample index ranges, fan-in via merge. Exact integer
// accumulation makes the result independent of the worker count.
inline ResultBundle run_experiment(const RunConfig& config) {
    if (config.sample_count < 1) throw std::invalid_argument("run: sample_count must be >= 1");
    if (config.worker_count < 1) throw std::invalid_argument("run: worker_count must be >= 1");

    std::vector<InputSample> samples;
    std::string source_description;
    if (!config.input_files.empty()) {
        auto src = ingest::SampleSource::from_files(config.input_files);
        samples.reserve(config.sample_count);
        while (samples.size() < config.sample_count) {
            auto s = src.next_sample();
            if (!s) {
                std::ostringstream msg;
                msg << "input exhausted after " << samples.size() << " of "
                    << config.sample_count << " samples (" << src.leftover_bytes()
                    << " leftover bytes)";
                throw std::runtime_error(msg.str());
            }
            samples.push_back(*s);
        }
        std::ostringstream desc;
        desc << "files";
        for (const auto& p : config.input_files) desc << ' ' << p.string();
        source_description = desc.str();
    } else {
        samples.reserve(config.sample_count);
        for (std::uint64_t k = 0; k < config.sample_count; ++k) {
            samples.push_back(ingest::deterministic_sample(config.seed, k));
        }
        std::ostringstream desc;
        desc << "deterministic seed=0x" << std::hex << config.seed;
        source_description = desc.str();
    }

    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(config.worker_count, samples.size()));
    std::vector<FlipCountMatrix> matrices(workers);
    std::vector<SacValueCounts> value_counts(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            // contiguous slice per worker
            const std::size_t n = samples.size();
            const std::size_t begin = n * w / workers;
            const std::size_t end = n * (w + 1) / workers;
            for (std::size_t k = begin; k < end; ++k) {
                const PerInputSac per_input = analyze_sample(samples[k]);
                accumulate(matrices[w], per_input);
                value_counts[w].add(per_input);
            }
        });
    }
    for (auto& t : threads) t.join();

    ResultBundle bundle;
    bundle.source_description = source_description;
    for (unsigned w = 0; w < workers; ++w) {
        bundle.matrix = merge(bundle.matrix, matrices[w]);
        bundle.value_counts.merge_from(value_counts[w]);
    }
    return bundle;
}

}  // namespace sac

#endif  // SACSHA1_BUNDLE_HPP
