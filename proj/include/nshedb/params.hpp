#pragma once

#include <cstdint>
#include <string>

#include "nshedb/rational.hpp"

namespace nshedb {

enum class SecurityProfile { desk, paper };

/// Cryptographic and cost-model parameters shared by every module.
///
/// n is both the ring degree and the slot count S. Slot batching in the BFV
/// backend additionally needs p = 1 (mod 2n); the sim backend works with any
/// prime p, which is how the depth-model tests run p=257 at n=8192.
struct Params {
    std::uint64_t n = 0;        // ring degree / slot count, power of two
    std::uint64_t p = 0;        // plaintext modulus, prime
    std::uint32_t q_bits = 0;   // total coefficient-modulus bit length (log Q)
    Rational depth_budget;      // B_noise, in multiplicative-depth units
    SecurityProfile profile = SecurityProfile::desk;

    bool batching_compatible() const { return n > 0 && (p - 1) % (2 * n) == 0; }
    std::uint64_t fingerprint() const;

    std::uint64_t slot_count() const { return n; }
    std::uint32_t log2_n() const;
    /// (p-1)/2: largest magnitude representable as a signed residue.
    std::uint64_t half_range() const { return (p - 1) / 2; }
};

/// Validates structural invariants (n power of two, p prime, budget > 0).
Params make_params(std::uint64_t n, std::uint64_t p, std::uint32_t q_bits, Rational depth_budget,
                   SecurityProfile profile = SecurityProfile::desk);

/// Named profiles for the CLI and tests.
///   desk : n=128, p=257, calibrated q_bits, budget 12. Largest ring that
///          batches p=257; fast enough for full-crypto differential runs.
///   paper: n=32768, p=65537, q_bits=881. Used for size and serialization
///          checks; makes no security claim here (the modulus chain behind
///          log Q = 881 is not reproduced).
Params params_profile(const std::string& name);

bool is_prime_u64(std::uint64_t v);
bool is_power_of_two(std::uint64_t v);
std::uint32_t ceil_log2_u64(std::uint64_t v);

}  // namespace nshedb
