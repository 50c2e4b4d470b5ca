#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace nshedb {

using Poly = std::vector<mpz_class>;  // coefficients canonical in [0, mod)

/// Negacyclic number-theoretic transform over Z_mod, mod prime = 1 (mod 2n).
/// forward() maps coefficients to evaluations at psi^(2k+1) (index k in natural
/// order); inverse() is its exact inverse. Used for ring multiplication in
/// Z_mod[X]/(X^n+1) and for the slot CRT map over Z_p.
class NttTables {
public:
    NttTables(std::uint64_t n, mpz_class modulus);

    std::uint64_t n() const { return n_; }
    const mpz_class& modulus() const { return mod_; }
    const mpz_class& psi() const { return psi_; }

    void forward(Poly& a) const;
    void inverse(Poly& a) const;
    Poly forwarded(const Poly& a) const {
        Poly out = a;
        forward(out);
        return out;
    }

    /// Negacyclic product c = a*b mod (X^n+1, mod).
    Poly multiply(const Poly& a, const Poly& b) const;
    /// Product against a pre-transformed right operand.
    Poly multiply_eval(const Poly& a, const Poly& b_eval) const;
    /// acc += a_eval * b_eval, all in the evaluation domain.
    void pointwise_accum(Poly& acc, const Poly& a_eval, const Poly& b_eval) const;

private:
    void cyclic_ntt(Poly& a, bool invert) const;

    std::uint64_t n_;
    mpz_class mod_;
    mpz_class psi_, psi_inv_, omega_, omega_inv_, n_inv_;
    std::vector<mpz_class> psi_pow_, psi_inv_pow_;
    std::vector<std::uint32_t> bitrev_;
};

mpz_class mod_pow(const mpz_class& base, const mpz_class& exp, const mpz_class& mod);

/// Deterministic smallest prime >= 2^(bits-1) congruent to 1 mod 2n.
mpz_class find_ntt_prime(std::uint32_t bits, std::uint64_t two_n);

/// Primitive 2n-th root of unity mod prime (psi^n = -1), deterministic choice.
mpz_class find_primitive_2n_root(std::uint64_t n, const mpz_class& prime);

/// Schoolbook negacyclic product; quadratic, used as the test oracle.
Poly negacyclic_schoolbook(const Poly& a, const Poly& b, const mpz_class& mod);

}  // namespace nshedb
