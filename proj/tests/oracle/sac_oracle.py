#!/usr/bin/env python3
"""Independent straight-line oracle for the avalanche pipeline.

Implements traced SHA-1 compression, the 672-bit flip analysis, and the
counter-indexed SplitMix64 sample generator directly in Python, sharing no
code with the C++ library. Regenerates the golden files under
tests/data/golden/ and the .rsp vector files under tests/data/vectors/
(digests computed with hashlib).
"""

import hashlib
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))
GOLDEN = os.path.join(HERE, "..", "data", "golden")
VECTORS = os.path.join(HERE, "..", "data", "vectors")

MASK32 = 0xFFFFFFFF
MASK64 = 0xFFFFFFFFFFFFFFFF


def rotl(x, n):
    return ((x << n) | (x >> (32 - n))) & MASK32


def sha1_trace(iv, block):
    w = list(block)
    for t in range(16, 80):
        w.append(rotl(w[t - 3] ^ w[t - 8] ^ w[t - 14] ^ w[t - 16], 1))
    a, b, c, d, e = iv
    out = []
    for t in range(80):
        if t < 20:
            f, k = (b & c) | ((~b & MASK32) & d), 0x5A827999
        elif t < 40:
            f, k = b ^ c ^ d, 0x6ED9EBA1
        elif t < 60:
            f, k = (b & c) | (b & d) | (c & d), 0x8F1BBCDC
        else:
            f, k = b ^ c ^ d, 0xCA62C1D6
        temp = (rotl(a, 5) + f + e + w[t] + k) & MASK32
        e, d, c, b, a = d, c, rotl(b, 30), a, temp
        out.append(temp)
    return out


def per_input_sac(words):
    """words: 21 ints (16 message, 5 IV). Returns 80x32 flip-count matrix."""
    base = sha1_trace(words[16:], words[:16])
    counts = [[0] * 32 for _ in range(80)]
    for i in range(672):
        flipped = list(words)
        flipped[i // 32] ^= 1 << (31 - (i % 32))
        trace = sha1_trace(flipped[16:], flipped[:16])
        for r in range(80):
            x = base[r] ^ trace[r]
            for j in range(32):
                counts[r][j] += (x >> (31 - j)) & 1
    return counts


def splitmix64_at(seed, index):
    z = (seed + (index + 1) * 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def deterministic_sample(seed, k):
    return [splitmix64_at(seed, k * 21 + w) >> 32 for w in range(21)]


def write_golden(name, words):
    counts = per_input_sac(words)
    path = os.path.join(GOLDEN, f"per_input_sac_{name}.txt")
    with open(path, "w") as f:
        f.write(f"sample {name}\n")
        for row in counts:
            f.write(" ".join(str(c) for c in row) + "\n")
    print(f"wrote {path}")


def write_rsp(name, bit_lengths, rng):
    path = os.path.join(VECTORS, name)
    with open(path, "w") as f:
        f.write("#  SHA-1 byte-oriented test vectors\n")
        f.write("[L = 20]\n\n")
        for bits in bit_lengths:
            msg = rng.randbytes(bits // 8)
            f.write(f"Len = {bits}\n")
            f.write("Msg = " + (msg.hex() if msg else "00") + "\n")
            f.write("MD = " + hashlib.sha1(msg).hexdigest() + "\n\n")
    print(f"wrote {path}")


def main():
    os.makedirs(GOLDEN, exist_ok=True)
    os.makedirs(VECTORS, exist_ok=True)

    write_golden("zero", [0] * 21)
    write_golden("seed5ac5ac_k0", deterministic_sample(0x5AC5AC, 0))
    write_golden("seed1_k7", deterministic_sample(1, 7))

    print("seed 0x5AC5AC sample 0 word 0 =",
          hex(deterministic_sample(0x5AC5AC, 0)[0]))
    print("seed 0x5AC5AC sample 0 word 20 =",
          hex(deterministic_sample(0x5AC5AC, 0)[20]))

    rng = random.Random(20150102)
    write_rsp("SHA1ShortMsg.rsp", range(0, 520, 8), rng)
    write_rsp("SHA1LongMsg.rsp", [1304 + 3072 * i for i in range(8)], rng)


if __name__ == "__main__":
    main()
