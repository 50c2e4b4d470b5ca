#include "nshedb/ntt.hpp"

#include "nshedb/errors.hpp"
#include "nshedb/params.hpp"

namespace nshedb {

mpz_class mod_pow(const mpz_class& base, const mpz_class& exp, const mpz_class& mod) {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

mpz_class find_ntt_prime(std::uint32_t bits, std::uint64_t two_n) {
    mpz_class start;
    mpz_ui_pow_ui(start.get_mpz_t(), 2, bits - 1);
    mpz_class c = start + 1;
    mpz_class rem = c % two_n;
    if (rem != 1) c += (two_n + 1 - rem.get_ui()) % two_n;
    while (mpz_probab_prime_p(c.get_mpz_t(), 30) == 0) c += two_n;
    if (mpz_sizeinbase(c.get_mpz_t(), 2) != bits)
        throw InvalidParams("no " + std::to_string(bits) + "-bit NTT prime found");
    return c;
}

mpz_class find_primitive_2n_root(std::uint64_t n, const mpz_class& prime) {
    mpz_class exp = (prime - 1) / (2 * n);
    for (std::uint64_t r = 2;; ++r) {
        mpz_class psi = mod_pow(mpz_class(r), exp, prime);
        if (psi == 0 || psi == 1) continue;
        if (mod_pow(psi, mpz_class(n), prime) == prime - 1) return psi;
        if (r > 10000) throw InvalidParams("no primitive 2n-th root found");
    }
}

NttTables::NttTables(std::uint64_t n, mpz_class modulus) : n_(n), mod_(std::move(modulus)) {
    if (!is_power_of_two(n)) throw InvalidParams("ntt size must be a power of two");
    if ((mod_ - 1) % (2 * n) != 0) throw InvalidParams("modulus must be 1 mod 2n for the negacyclic NTT");
    psi_ = find_primitive_2n_root(n, mod_);
    mpz_class exp = mod_ - 2;  // inverse via Fermat
    psi_inv_ = mod_pow(psi_, exp, mod_);
    omega_ = (psi_ * psi_) % mod_;
    omega_inv_ = mod_pow(omega_, exp, mod_);
    n_inv_ = mod_pow(mpz_class(n), exp, mod_);

    psi_pow_.resize(n);
    psi_inv_pow_.resize(n);
    psi_pow_[0] = 1;
    psi_inv_pow_[0] = 1;
    for (std::uint64_t i = 1; i < n; ++i) {
        psi_pow_[i] = (psi_pow_[i - 1] * psi_) % mod_;
        psi_inv_pow_[i] = (psi_inv_pow_[i - 1] * psi_inv_) % mod_;
    }

    bitrev_.resize(n);
    std::uint32_t lg = ceil_log2_u64(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        std::uint32_t r = 0;
        for (std::uint32_t b = 0; b < lg; ++b)
            if (i & (1ull << b)) r |= 1u << (lg - 1 - b);
        bitrev_[i] = r;
    }
}

void NttTables::cyclic_ntt(Poly& a, bool invert) const {
    for (std::uint64_t i = 0; i < n_; ++i) {
        std::uint64_t j = bitrev_[i];
        if (i < j) std::swap(a[i], a[j]);
    }
    const mpz_class& root = invert ? omega_inv_ : omega_;
    mpz_class w, u, v;
    for (std::uint64_t len = 2; len <= n_; len <<= 1) {
        mpz_class wlen = mod_pow(root, mpz_class(n_ / len), mod_);
        for (std::uint64_t i = 0; i < n_; i += len) {
            w = 1;
            for (std::uint64_t j = 0; j < len / 2; ++j) {
                u = a[i + j];
                v = (a[i + j + len / 2] * w) % mod_;
                a[i + j] = u + v;
                if (a[i + j] >= mod_) a[i + j] -= mod_;
                a[i + j + len / 2] = u - v;
                if (a[i + j + len / 2] < 0) a[i + j + len / 2] += mod_;
                w = (w * wlen) % mod_;
            }
        }
    }
}

void NttTables::forward(Poly& a) const {
    if (a.size() != n_) throw ShapeMismatch("ntt operand size");
    for (std::uint64_t i = 0; i < n_; ++i) a[i] = (a[i] * psi_pow_[i]) % mod_;
    cyclic_ntt(a, false);
}

void NttTables::inverse(Poly& a) const {
    if (a.size() != n_) throw ShapeMismatch("ntt operand size");
    cyclic_ntt(a, true);
    for (std::uint64_t i = 0; i < n_; ++i) a[i] = (((a[i] * n_inv_) % mod_) * psi_inv_pow_[i]) % mod_;
}

Poly NttTables::multiply(const Poly& a, const Poly& b) const {
    Poly fa = a, fb = b;
    forward(fa);
    forward(fb);
    for (std::uint64_t i = 0; i < n_; ++i) fa[i] = (fa[i] * fb[i]) % mod_;
    inverse(fa);
    return fa;
}

Poly NttTables::multiply_eval(const Poly& a, const Poly& b_eval) const {
    Poly fa = a;
    forward(fa);
    for (std::uint64_t i = 0; i < n_; ++i) fa[i] = (fa[i] * b_eval[i]) % mod_;
    inverse(fa);
    return fa;
}

void NttTables::pointwise_accum(Poly& acc, const Poly& a_eval, const Poly& b_eval) const {
    for (std::uint64_t i = 0; i < n_; ++i) {
        acc[i] += a_eval[i] * b_eval[i];
        acc[i] %= mod_;
    }
}

Poly negacyclic_schoolbook(const Poly& a, const Poly& b, const mpz_class& mod) {
    std::size_t n = a.size();
    Poly out(n, mpz_class(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            mpz_class term = (a[i] * b[j]) % mod;
            std::size_t k = i + j;
            if (k < n) {
                out[k] = (out[k] + term) % mod;
            } else {
                out[k - n] = (out[k - n] - term) % mod;
                if (out[k - n] < 0) out[k - n] += mod;
            }
        }
    }
    return out;
}

}  // namespace nshedb
