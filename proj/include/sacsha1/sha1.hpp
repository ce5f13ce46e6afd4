#ifndef SACSHA1_SHA1_HPP
#define SACSHA1_SHA1_HPP

// SHA-1 compression function (FIPS 180-1) with a round-traced variant that
// exposes the 80 per-round working values, plus the full padded hash used
// only for test-vector validation.

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sac {

using Word = std::uint32_t;

struct MessageBlock {
    std::array<Word, 16> words{};
};

struct ChainingState {
    Word a = 0, b = 0, c = 0, d = 0, e = 0;

    bool operator==(const ChainingState&) const = default;
};

// Per-round outputs: round_outputs[r] is the newly computed working value
// (the new `a`) of round r.
struct RoundTrace {
    std::array<Word, 80> round_outputs{};
};

struct Digest {
    std::array<Word, 5> words{};

    bool operator==(const Digest&) const = default;

    std::string hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out;
        out.reserve(40);
        for (Word w : words) {
            for (int shift = 28; shift >= 0; shift -= 4) {
                out.push_back(digits[(w >> shift) & 0xF]);
            }
        }
        return out;
    }
};

inline constexpr ChainingState kStandardIv = {
    0x67452301u, 0xEFCDAB89u, 0x98BADCFEu, 0x10325476u, 0xC3D2E1F0u};

// W_t = block[t] for t < 16; W_t = ROTL1(W_{t-3} ^ W_{t-8} ^ W_{t-14} ^ W_{t-16}).
inline std::array<Word, 80> message_schedule(const MessageBlock& block) {
    std::array<Word, 80> w{};
    for (std::size_t t = 0; t < 16; ++t) w[t] = block.words[t];
    for (std::size_t t = 16; t < 80; ++t) {
        w[t] = std::rotl(w[t - 3] ^ w[t - 8] ^ w[t - 14] ^ w[t - 16], 1);
    }
    return w;
}

namespace detail {

inline Word round_function(std::size_t t, Word b, Word c, Word d) {
    if (t < 20) return (b & c) | (~b & d);         // Ch
    if (t < 40) return b ^ c ^ d;                  // Parity
    if (t < 60) return (b & c) | (b & d) | (c & d);// Maj
    return b ^ c ^ d;                              // Parity
}

inline Word round_constant(std::size_t t) {
    if (t < 20) return 0x5A827999u;
    if (t < 40) return 0x6ED9EBA1u;
    if (t < 60) return 0x8F1BBCDCu;
    return 0xCA62C1D6u;
}

}  // namespace detail

struct TracedCompression {
    RoundTrace trace;
    ChainingState final_state;  // post round 79, before feed-forward
};

inline TracedCompression compress_traced(const ChainingState& iv,
                                         const MessageBlock& block) {
    const auto w = message_schedule(block);
    Word a = iv.a, b = iv.b, c = iv.c, d = iv.d, e = iv.e;
    TracedCompression out;
    for (std::size_t t = 0; t < 80; ++t) {
        Word temp = std::rotl(a, 5) + detail::round_function(t, b, c, d) + e +
                    w[t] + detail::round_constant(t);
        e = d;
        d = c;
        c = std::rotl(b, 30);
        b = a;
        a = temp;
        out.trace.round_outputs[t] = temp;
    }
    out.final_state = {a, b, c, d, e};
    return out;
}

// Davies-Meyer feed-forward: digest = iv + final state, word-wise mod 2^32.
inline Digest compress(const ChainingState& iv, const MessageBlock& block) {
    const ChainingState s = compress_traced(iv, block).final_state;
    return Digest{{iv.a + s.a, iv.b + s.b, iv.c + s.c, iv.d + s.d, iv.e + s.e}};
}

// Full hash: Merkle-Damgard padding over 512-bit chunks from the standard IV.
// Validation path only; the avalanche pipeline never touches it.
inline Digest sha1(std::span<const std::uint8_t> message) {
    if (message.size() >= (std::uint64_t{1} << 61)) {
        throw std::length_error("sha1: message longer than 2^64 bits");
    }
    const std::uint64_t bit_length = std::uint64_t{message.size()} * 8;

    std::vector<std::uint8_t> padded(message.begin(), message.end());
    padded.push_back(0x80);
    while (padded.size() % 64 != 56) padded.push_back(0x00);
    for (int shift = 56; shift >= 0; shift -= 8) {
        padded.push_back(static_cast<std::uint8_t>(bit_length >> shift));
    }

    ChainingState state = kStandardIv;
    for (std::size_t off = 0; off < padded.size(); off += 64) {
        MessageBlock block;
        for (std::size_t i = 0; i < 16; ++i) {
            block.words[i] = (Word{padded[off + 4 * i]} << 24) |
                             (Word{padded[off + 4 * i + 1]} << 16) |
                             (Word{padded[off + 4 * i + 2]} << 8) |
                             Word{padded[off + 4 * i + 3]};
        }
        const Digest d = compress(state, block);
        state = {d.words[0], d.words[1], d.words[2], d.words[3], d.words[4]};
    }
    return Digest{{state.a, state.b, state.c, state.d, state.e}};
}

inline Digest sha1(const std::string& message) {
    return sha1(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(message.data()), message.size()));
}

}  // namespace sac

#endif  // SACSHA1_SHA1_HPP
