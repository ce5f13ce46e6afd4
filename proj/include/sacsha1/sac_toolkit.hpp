#ifndef SACSHA1_SAC_TOOLKIT_HPP
#define SACSHA1_SAC_TOOLKIT_HPP

// Exhaustive-enumeration SAC oracles for small boolean functions: the summed
// criterion (per flipped bit, sum of output changes over all inputs must be
// 2^(n-1)) and the stricter rowwise criterion (every baseline input must see
// a change probability of exactly 1/2).
//
// Bit i of an input x (0-based here) is the value (x >> i) & 1; flipping bit
// i XORs x with 1 << i.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sac::toolkit {

inline constexpr std::size_t kMaxArity = 24;

struct BooleanFunction {
    std::size_t arity = 0;
    std::vector<std::uint8_t> truth_table;  // 2^arity entries, each 0 or 1

    static BooleanFunction from_table(std::size_t arity, std::vector<std::uint8_t> table) {
        if (arity < 1 || arity > kMaxArity) {
            throw std::out_of_range("BooleanFunction: arity must be in 1..24");
        }
        if (table.size() != (std::size_t{1} << arity)) {
            throw std::invalid_argument("BooleanFunction: truth table size must be 2^arity");
        }
        for (std::uint8_t v : table) {
            if (v > 1) throw std::invalid_argument("BooleanFunction: table entries must be bits");
        }
        return {arity, std::move(table)};
    }

    std::uint8_t operator()(std::uint32_t x) const { return truth_table[x]; }
};

// Forre sums: result[i] = sum over all inputs x of f(x) XOR f(x ^ c_i).
// The summed criterion holds iff every entry equals 2^(arity-1).
inline std::vector<std::uint64_t> summed_sac(const BooleanFunction& f) {
    if (f.arity > kMaxArity) throw std::out_of_range("summed_sac: arity too large");
    const std::uint32_t domain = std::uint32_t{1} << f.arity;
    std::vector<std::uint64_t> sums(f.arity, 0);
    for (std::size_t i = 0; i < f.arity; ++i) {
        const std::uint32_t mask = std::uint32_t{1} << i;
        for (std::uint32_t x = 0; x < domain; ++x) {
            sums[i] += f(x) ^ f(x ^ mask);
        }
    }
    return sums;
}

inline bool satisfies_summed(const BooleanFunction& f) {
    const std::uint64_t target = std::uint64_t{1} << (f.arity - 1);
    for (std::uint64_t s : summed_sac(f)) {
        if (s != target) return false;
    }
    return true;
}

// Per-baseline change probabilities: result[x] = |{i : f(x) != f(x ^ c_i)}| / arity.
// The rowwise criterion holds iff every entry equals 0.5.
inline std::vector<double> rowwise_profile(const BooleanFunction& f) {
    if (f.arity > kMaxArity) throw std::out_of_range("rowwise_profile: arity too large");
    const std::uint32_t domain = std::uint32_t{1} << f.arity;
    std::vector<double> profile(domain, 0.0);
    for (std::uint32_t x = 0; x < domain; ++x) {
        std::size_t changes = 0;
        for (std::size_t i = 0; i < f.arity; ++i) {
            changes += f(x) ^ f(x ^ (std::uint32_t{1} << i));
        }
        profile[x] = static_cast<double>(changes) / static_cast<double>(f.arity);
    }
    return profile;
}

inline bool satisfies_rowwise(const BooleanFunction& f) {
    for (double p : rowwise_profile(f)) {
        if (p != 0.5) return false;
    }
    return true;
}

struct SacReport {
    std::vector<std::uint64_t> per_flip_sums;
    std::vector<double> per_input_change_probabilities;
    bool satisfies_summed = false;
    bool satisfies_rowwise = false;
};

inline SacReport sac_report(const BooleanFunction& f) {
    SacReport report;
    report.per_flip_sums = summed_sac(f);
    report.per_input_change_probabilities = rowwise_profile(f);
    const std::uint64_t target = std::uint64_t{1} << (f.arity - 1);
    report.satisfies_summed = true;
    for (std::uint64_t s : report.per_flip_sums) {
        if (s != target) report.satisfies_summed = false;
    }
    report.satisfies_rowwise = true;
    for (double p : report.per_input_change_probabilities) {
        if (p != 0.5) report.satisfies_rowwise = false;
    }
    return report;
}

// f(x) = 0 if the highest-order bit is 0, else the parity of the remaining
// bits. For arity 2 this is exactly x0 AND x1.
inline BooleanFunction babbage_function(std::size_t arity) {
    if (arity < 2 || arity > kMaxArity) {
        throw std::out_of_range("babbage_function: arity must be in 2..24");
    }
    const std::uint32_t domain = std::uint32_t{1} << arity;
    const std::uint32_t selector = std::uint32_t{1} << (arity - 1);
    std::vector<std::uint8_t> table(domain, 0);
    for (std::uint32_t x = 0; x < domain; ++x) {
        if (x & selector) {
            table[x] = static_cast<std::uint8_t>(std::popcount(x & (selector - 1)) & 1);
        }
    }
    return BooleanFunction::from_table(arity, std::move(table));
}

}  // namespace sac::toolkit

#endif  // SACSHA1_SAC_TOOLKIT_HPP
