#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nshedb/ntt.hpp"

using namespace nshedb;

namespace {

Poly random_poly(std::mt19937_64& rng, std::uint64_t n, const mpz_class& mod) {
    Poly out(n);
    for (auto& c : out) {
        mpz_class v = mpz_class(rng());
        v = (v * rng()) % mod;
        if (v < 0) v += mod;
        c = v;
    }
    return out;
}

}  // namespace

TEST_CASE("prime search produces NTT-compatible primes") {
    mpz_class q = find_ntt_prime(60, 256);
    CHECK(mpz_probab_prime_p(q.get_mpz_t(), 30) != 0);
    CHECK((q - 1) % 256 == 0);
    CHECK(mpz_sizeinbase(q.get_mpz_t(), 2) == 60);
    // deterministic
    CHECK(find_ntt_prime(60, 256) == q);
}

TEST_CASE("forward then inverse is the identity") {
    std::mt19937_64 rng(5);
    for (std::uint64_t n : {8ull, 64ull, 256ull}) {
        mpz_class q = find_ntt_prime(50, 2 * n);
        NttTables tab(n, q);
        for (int trial = 0; trial < 20; ++trial) {
            Poly a = random_poly(rng, n, q);
            Poly b = a;
            tab.forward(b);
            tab.inverse(b);
            CHECK(a == b);
        }
    }
}

TEST_CASE("negacyclic NTT product matches schoolbook for n <= 64") {
    std::mt19937_64 rng(17);
    for (std::uint64_t n : {8ull, 16ull, 32ull, 64ull}) {
        mpz_class q = find_ntt_prime(40, 2 * n);
        NttTables tab(n, q);
        for (int trial = 0; trial < 25; ++trial) {
            Poly a = random_poly(rng, n, q);
            Poly b = random_poly(rng, n, q);
            CHECK(tab.multiply(a, b) == negacyclic_schoolbook(a, b, q));
        }
    }
}

TEST_CASE("X^n == -1 under the transform") {
    // multiplying by X rotates coefficients negacyclically; X*X^(n-1) = -1
    std::uint64_t n = 16;
    mpz_class q = find_ntt_prime(40, 2 * n);
    NttTables tab(n, q);
    Poly x(n, mpz_class(0)), xn1(n, mpz_class(0));
    x[1] = 1;
    xn1[n - 1] = 1;
    Poly prod = tab.multiply(x, xn1);
    CHECK(prod[0] == q - 1);
    for (std::uint64_t i = 1; i < n; ++i) CHECK(prod[i] == 0);
}

TEST_CASE("eval-domain helpers agree with plain multiply") {
    std::mt19937_64 rng(23);
    std::uint64_t n = 32;
    mpz_class q = find_ntt_prime(45, 2 * n);
    NttTables tab(n, q);
    Poly a = random_poly(rng, n, q), b = random_poly(rng, n, q);
    CHECK(tab.multiply_eval(a, tab.forwarded(b)) == tab.multiply(a, b));
}
