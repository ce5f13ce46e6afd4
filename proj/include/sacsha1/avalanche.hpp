#ifndef SACSHA1_AVALANCHE_HPP
#define SACSHA1_AVALANCHE_HPP

// Avalanche experiment core: single-bit input flips over the 672-bit
// (16-word message + 5-word IV) input, per-round avalanche vectors, and
// mergeable flip-count accumulators.
//
// Bit conventions, used everywhere in this project:
//   input bit i (0..671)  -> word i/32, bit position 31 - (i % 32); words
//                            0..15 are the message, 16..20 the IV a..e
//   output bit j (0..31)  -> bit position 31 - j of a round's output word
//                            (j = 0 is the most significant bit)

#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sacsha1/sha1.hpp"

namespace sac {

inline constexpr std::size_t kInputBits = 672;
inline constexpr std::size_t kRounds = 80;
inline constexpr std::size_t kBitsPerWord = 32;

struct InputSample {
    MessageBlock message;
    ChainingState iv;

    Word& word(std::size_t w) {
        if (w < 16) return message.words[w];
        switch (w) {
            case 16: return iv.a;
            case 17: return iv.b;
            case 18: return iv.c;
            case 19: return iv.d;
            case 20: return iv.e;
        }
        throw std::out_of_range("InputSample word index");
    }

    const Word& word(std::size_t w) const {
        return const_cast<InputSample*>(this)->word(w);
    }

    bool operator==(const InputSample& other) const {
        return message.words == other.message.words && iv == other.iv;
    }
};

inline InputSample flip_bit(InputSample sample, std::size_t i) {
    if (i >= kInputBits) throw std::out_of_range("flip_bit: bit index out of range");
    sample.word(i / 32) ^= Word{1} << (31 - (i % 32));
    return sample;
}

// Per-input SAC values as exact numerators over 672: values[r][j] is the
// number of the 672 single-bit flips whose avalanche vector has output bit j
// set at round r.
struct PerInputSac {
    std::array<std::array<std::uint16_t, kBitsPerWord>, kRounds> flip_counts{};

    double value(std::size_t r, std::size_t j) const {
        return static_cast<double>(flip_counts[r][j]) / kInputBits;
    }
};

// 673 traced compressions: one baseline plus one per flipped bit.
inline PerInputSac analyze_sample(const InputSample& sample) {
    const RoundTrace baseline = compress_traced(sample.iv, sample.message).trace;
    PerInputSac out;
    for (std::size_t i = 0; i < kInputBits; ++i) {
        const InputSample flipped = flip_bit(sample, i);
        const RoundTrace t = compress_traced(flipped.iv, flipped.message).trace;
        for (std::size_t r = 0; r < kRounds; ++r) {
            Word x = baseline.round_outputs[r] ^ t.round_outputs[r];
            while (x != 0) {
                const int low = std::countr_zero(x);
                x &= x - 1;
                ++out.flip_counts[r][31 - low];
            }
        }
    }
    return out;
}

// Mergeable accumulator over (sample, flip-index) trials.
struct FlipCountMatrix {
    std::array<std::array<std::uint64_t, kBitsPerWord>, kRounds> flip_counts{};
    std::uint64_t trials = 0;
    std::uint64_t samples = 0;

    bool operator==(const FlipCountMatrix&) const = default;
};

namespace detail {

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b) {
        throw std::overflow_error("FlipCountMatrix counter overflow");
    }
    return a + b;
}

}  // namespace detail

inline void accumulate(FlipCountMatrix& acc, const PerInputSac& per_input) {
    for (std::size_t r = 0; r < kRounds; ++r) {
        for (std::size_t j = 0; j < kBitsPerWord; ++j) {
            acc.flip_counts[r][j] =
                detail::checked_add(acc.flip_counts[r][j], per_input.flip_counts[r][j]);
        }
    }
    acc.trials = detail::checked_add(acc.trials, kInputBits);
    acc.samples = detail::checked_add(acc.samples, 1);
}

inline void accumulate(FlipCountMatrix& acc, const InputSample& sample) {
    accumulate(acc, analyze_sample(sample));
}

inline FlipCountMatrix merge(const FlipCountMatrix& a, const FlipCountMatrix& b) {
    FlipCountMatrix out;
    for (std::size_t r = 0; r < kRounds; ++r) {
        for (std::size_t j = 0; j < kBitsPerWord; ++j) {
            out.flip_counts[r][j] = detail::checked_add(a.flip_counts[r][j], b.flip_counts[r][j]);
        }
    }
    out.trials = detail::checked_add(a.trials, b.trials);
    out.samples = detail::checked_add(a.samples, b.samples);
    return out;
}

struct SacEstimate {
    double probability = 0.0;
    double divergence = 0.0;  // |probability - 0.5|
};

using SacEstimateMatrix = std::array<std::array<SacEstimate, kBitsPerWord>, kRounds>;

inline SacEstimateMatrix estimate(const FlipCountMatrix& acc) {
    if (acc.trials == 0) throw std::invalid_argument("estimate: no trials accumulated");
    SacEstimateMatrix out;
    for (std::size_t r = 0; r < kRounds; ++r) {
        for (std::size_t j = 0; j < kBitsPerWord; ++j) {
            const double p = static_cast<double>(acc.flip_counts[r][j]) /
                             static_cast<double>(acc.trials);
            out[r][j] = {p, p < 0.5 ? 0.5 - p : p - 0.5};
        }
    }
    return out;
}

// bit(r, i) = (r - 1) * 32 + (i - 1) with 1-based round and bit.
inline std::size_t flatten_bit_index(std::size_t round, std::size_t bit) {
    if (round < 1 || round > kRounds || bit < 1 || bit > kBitsPerWord) {
        throw std::out_of_range("flatten_bit_index: round or bit out of range");
    }
    return (round - 1) * kBitsPerWord + (bit - 1);
}

// Exact distribution of per-input SAC numerators: counts[r][j][m] is the
// number of accumulated samples whose per-input flip count at (r, j) was m.
// Subsumes every histogram and quantile the reports need.
struct SacValueCounts {
    static constexpr std::size_t kNumerators = kInputBits + 1;

    std::vector<std::uint64_t> counts;
    std::uint64_t samples = 0;

    SacValueCounts() : counts(kRounds * kBitsPerWord * kNumerators, 0) {}

    std::uint64_t& at(std::size_t r, std::size_t j, std::size_t m) {
        return counts[(r * kBitsPerWord + j) * kNumerators + m];
    }
    std::uint64_t at(std::size_t r, std::size_t j, std::size_t m) const {
        return counts[(r * kBitsPerWord + j) * kNumerators + m];
    }

    void add(const PerInputSac& per_input) {
        for (std::size_t r = 0; r < kRounds; ++r) {
            for (std::size_t j = 0; j < kBitsPerWord; ++j) {
                at(r, j, per_input.flip_counts[r][j]) =
                    detail::checked_add(at(r, j, per_input.flip_counts[r][j]), 1);
            }
        }
        samples = detail::checked_add(samples, 1);
    }

    void merge_from(const SacValueCounts& other) {
        for (std::size_t k = 0; k < counts.size(); ++k) {
            counts[k] = detail::checked_add(counts[k], other.counts[k]);
        }
        samples = detail::checked_add(samples, other.samples);
    }

    bool operator==(const SacValueCounts&) const = default;
};

}  // namespace sac

#endif  // SACSHA1_AVALANCHE_HPP
