#include "nshedb/params.hpp"

#include "nshedb/errors.hpp"

namespace nshedb {

bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

std::uint32_t ceil_log2_u64(std::uint64_t v) {
    if (v <= 1) return 0;
    std::uint32_t bits = 0;
    std::uint64_t x = v - 1;
    while (x) { ++bits; x >>= 1; }
    return bits;
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (v % sp == 0) return v == sp;
    }
    std::uint64_t d = v - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, v);
        if (x == 1 || x == v - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod_u64(x, x, v);
            if (x == v - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

std::uint64_t Params::fingerprint() const {
    // FNV-1a over the defining fields.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(n);
    mix(p);
    mix(q_bits);
    mix(static_cast<std::uint64_t>(depth_budget.num()));
    mix(static_cast<std::uint64_t>(depth_budget.den()));
    return h;
}

std::uint32_t Params::log2_n() const { return ceil_log2_u64(n); }

Params make_params(std::uint64_t n, std::uint64_t p, std::uint32_t q_bits, Rational depth_budget,
                   SecurityProfile profile) {
    if (!is_power_of_two(n)) throw InvalidParams("n must be a power of two, got " + std::to_string(n));
    if (!is_prime_u64(p)) throw InvalidParams("p must be prime, got " + std::to_string(p));
    if (!(depth_budget > Rational(0))) throw InvalidParams("depth_budget must be > 0");
    if (q_bits < 16) throw InvalidParams("q_bits too small");
    Params params;
    params.n = n;
    params.p = p;
    params.q_bits = q_bits;
    params.depth_budget = depth_budget;
    params.profile = profile;
    return params;
}

Params params_profile(const std::string& name) {
    if (name == "desk") {
        // q_bits calibrated with the repeated-squaring stress oracle: a
        // depth-12 chain keeps >= 40 bits of noise budget at 340 bits.
        return make_params(128, 257, 340, Rational(12), SecurityProfile::desk);
    }
    if (name == "paper") {
        return make_params(32768, 65537, 881, Rational(20), SecurityProfile::paper);
    }
    throw InvalidParams("unknown profile '" + name + "' (expected desk|paper)");
}

}  // namespace nshedb
