#ifndef SACSHA1_NIST_HPP
#define SACSHA1_NIST_HPP

// NIST CAVP byte-oriented response (.rsp) file parsing and vector running.
// A vector is a (Len, Msg, MD) triple; Len is in bits and must be a multiple
// of 8, Len = 0 means the empty message regardless of the Msg field.

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sacsha1/sha1.hpp"

namespace sac::nist {

struct Vector {
    std::uint64_t bit_length = 0;
    std::vector<std::uint8_t> message;
    std::string expected_md;  // lowercase hex
};

struct VectorResult {
    std::string file;
    std::uint64_t bit_length = 0;
    bool passed = false;
    std::string expected;
    std::string actual;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::uint8_t> parse_hex(const std::string& hex) {
    if (hex.size() % 2 != 0) throw std::runtime_error("odd-length hex string");
    std::vector<std::uint8_t> out;
    out.reserve(hex.size() / 2);
    auto nibble = [](char c) -> unsigned {
        if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
        throw std::runtime_error("invalid hex digit");
    };
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        out.push_back(static_cast<std::uint8_t>(nibble(hex[i]) << 4 | nibble(hex[i + 1])));
    }
    return out;
}

inline std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace detail

inline std::vector<Vector> parse_rsp(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read vector file: " + path.string());

    std::vector<Vector> vectors;
    Vector current;
    bool have_len = false, have_msg = false;
    std::string line;
    while (std::getline(in, line)) {
        line = detail::trim(line);
        if (line.empty() || line[0] == '#' || line[0] == '[') continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (key == "Len") {
            current.bit_length = std::stoull(value);
            have_len = true;
        } else if (key == "Msg") {
            current.message = detail::parse_hex(value);
            have_msg = true;
        } else if (key == "MD") {
            if (!have_len || !have_msg) {
                throw std::runtime_error("malformed .rsp: MD before Len/Msg in " + path.string());
            }
            if (current.bit_length % 8 != 0) {
                throw std::runtime_error("bit-oriented vector unsupported in " + path.string());
            }
            if (current.bit_length == 0) current.message.clear();
            if (current.message.size() != current.bit_length / 8) {
                throw std::runtime_error("Len/Msg mismatch in " + path.string());
            }
            current.expected_md = detail::lower(value);
            vectors.push_back(current);
            current = Vector{};
            have_len = have_msg = false;
        }
    }
    return vectors;
}

inline std::vector<VectorResult> run_vectors(const std::filesystem::path& path) {
    std::vector<VectorResult> results;
    for (const Vector& v : parse_rsp(path)) {
        VectorResult r;
        r.file = path.filename().string();
        r.bit_length = v.bit_length;
        r.expected = v.expected_md;
        r.actual = sha1(std::span<const std::uint8_t>(v.message)).hex();
        r.passed = (r.actual == r.expected);
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace sac::nist

#endif  // SACSHA1_NIST_HPP
