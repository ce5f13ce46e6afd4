#ifndef SACSHA1_INGEST_HPP
#define SACSHA1_INGEST_HPP

// Input sample sources.
//
// File mode treats the command-line-ordered concatenation of raw binary
// files as a bit stream and consumes exactly 84 bytes (672 bits) per sample:
// 21 big-endian 32-bit words, words 0..15 the message block, 16..20 the IV.
// Trailing bytes short of a full sample are counted, not an error.
//
// Deterministic mode is counter-indexed SplitMix64: word w of sample k is
// the top 32 bits of the SplitMix64 finalizer applied to
// seed + (k*21 + w + 1) * 0x9E3779B97F4A7C15, i.e. the (k*21+w+1)-th output
// of a SplitMix64 stream seeded with `seed`. Any implementation of that
// formula reproduces the stream, and disjoint sample ranges can be generated
// independently.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sacsha1/avalanche.hpp"

namespace sac::ingest {

inline constexpr std::size_t kBytesPerSample = 84;

inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline InputSample deterministic_sample(std::uint64_t seed, std::uint64_t index) {
    InputSample s;
    for (std::size_t w = 0; w < 21; ++w) {
        s.word(w) = static_cast<Word>(splitmix64_at(seed, index * 21 + w) >> 32);
    }
    return s;
}

inline InputSample sample_from_bytes(const std::uint8_t* bytes) {
    InputSample s;
    for (std::size_t w = 0; w < 21; ++w) {
        s.word(w) = (Word{bytes[4 * w]} << 24) | (Word{bytes[4 * w + 1]} << 16) |
                    (Word{bytes[4 * w + 2]} << 8) | Word{bytes[4 * w + 3]};
    }
    return s;
}

inline void sample_to_bytes(const InputSample& s, std::uint8_t* bytes) {
    for (std::size_t w = 0; w < 21; ++w) {
        const Word v = s.word(w);
        bytes[4 * w] = static_cast<std::uint8_t>(v >> 24);
        bytes[4 * w + 1] = static_cast<std::uint8_t>(v >> 16);
        bytes[4 * w + 2] = static_cast<std::uint8_t>(v >> 8);
        bytes[4 * w + 3] = static_cast<std::uint8_t>(v);
    }
}

class SampleSource {
  public:
    static SampleSource from_files(std::vector<std::filesystem::path> paths) {
        SampleSource src;
        src.kind_ = Kind::kFile;
        src.paths_ = std::move(paths);
        return src;
    }

    static SampleSource deterministic(std::uint64_t seed) {
        SampleSource src;
        src.kind_ = Kind::kDeterministic;
        src.seed_ = seed;
        return src;
    }

    bool is_file_mode() const { return kind_ == Kind::kFile; }
    std::uint64_t seed() const { return seed_; }

    // nullopt at end of stream. File mode reads strictly sequentially.
    std::optional<InputSample> next_sample() {
        if (kind_ == Kind::kDeterministic) {
            return deterministic_sample(seed_, counter_++);
        }
        std::uint8_t buf[kBytesPerSample];
        std::size_t have = 0;
        while (have < kBytesPerSample) {
            if (!stream_.is_open() || stream_.peek() == std::ifstream::traits_type::eof()) {
                if (!open_next_file()) break;
            }
            stream_.read(reinterpret_cast<char*>(buf) + have,
                         static_cast<std::streamsize>(kBytesPerSample - have));
            have += static_cast<std::size_t>(stream_.gcount());
        }
        if (have < kBytesPerSample) {
            leftover_bytes_ += have;
            return std::nullopt;
        }
        ++counter_;
        return sample_from_bytes(buf);
    }

    std::uint64_t samples_read() const { return counter_; }
    std::uint64_t leftover_bytes() const { return leftover_bytes_; }

  private:
    enum class Kind { kFile, kDeterministic };

    bool open_next_file() {
        while (file_index_ < paths_.size()) {
            stream_.close();
            stream_.clear();
            stream_.open(paths_[file_index_], std::ios::binary);
            if (!stream_) {
                throw std::runtime_error("cannot read input file: " +
                                         paths_[file_index_].string());
            }
            ++file_index_;
            if (stream_.peek() != std::ifstream::traits_type::eof()) return true;
        }
        return false;
    }

    Kind kind_ = Kind::kDeterministic;
    std::uint64_t seed_ = 0;
    std::uint64_t counter_ = 0;
    std::uint64_t leftover_bytes_ = 0;
    std::vector<std::filesystem::path> paths_;
    std::size_t file_index_ = 0;
    std::ifstream stream_;
};

inline std::uint64_t count_samples(const std::vector<std::filesystem::path>& paths) {
    std::uint64_t total_bytes = 0;
    for (const auto& p : paths) {
        std::error_code ec;
        const auto size = std::filesystem::file_size(p, ec);
        if (ec) throw std::runtime_error("cannot stat input file: " + p.string());
        total_bytes += size;
    }
    return total_bytes / kBytesPerSample;
}

}  // namespace sac::ingest

#endif  // SACSHA1_INGEST_HPP
