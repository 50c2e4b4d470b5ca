#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nshedb/he_vector.hpp"
#include "nshedb/ntt.hpp"
#include "nshedb/params.hpp"

namespace nshedb::bfv {

/// Deterministic randomness for key generation and encryption.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t next_u64() { return eng_(); }
    mpz_class uniform_mod(const mpz_class& m);
    int ternary();      // uniform in {-1, 0, 1}
    int cbd_noise();    // centered binomial, sigma ~= 3.2 per the HE standard

private:
    std::mt19937_64 eng_;
};

/// Per-parameter tables: the concrete prime q behind log Q, NTT tables over q
/// and over p (slot map), the slot permutation, rotation machinery, and the
/// digit-decomposition layout. Cached by params fingerprint.
class SchemeContext {
public:
    static std::shared_ptr<const SchemeContext> get(const Params& params);

    const Params& params() const { return params_; }
    const mpz_class& q() const { return q_; }
    const mpz_class& delta() const { return delta_; }     // floor(q/p)
    const NttTables& ntt_q() const { return *ntt_q_; }
    const NttTables& ntt_p() const { return *ntt_p_; }
    /// Wide auxiliary modulus for exact tensoring in he_mul (built lazily).
    const NttTables& ntt_aux() const;

    std::uint32_t decomp_base_bits() const { return decomp_base_bits_; }
    std::uint32_t decomp_digits() const { return decomp_digits_; }
    std::uint32_t bytes_per_coeff() const { return (params_.q_bits + 7) / 8; }

    std::uint64_t slot_to_eval(std::uint64_t slot) const { return slot_to_eval_[slot]; }

    /// Galois element realizing a row rotation by 2^level (level < log2(n/2)),
    /// and the column-swap element 2n-1.
    std::uint64_t rotation_elt(std::uint32_t level) const { return rot_elts_[level]; }
    std::uint64_t col_swap_elt() const { return col_swap_elt_; }
    std::uint32_t rotation_levels() const { return static_cast<std::uint32_t>(rot_elts_.size()); }
    /// All Galois elements keygen must cover for power-of-two rotations.
    std::vector<std::uint64_t> required_galois_elts() const;

    /// 0/1 plain masks selecting the same-row / wrapped-row pieces of a
    /// two-piece cyclic rotation by 2^level, pre-transformed mod q.
    const Poly& rot_head_mask_eval(std::uint32_t level) const { return rot_head_masks_[level]; }
    const Poly& rot_tail_mask_eval(std::uint32_t level) const { return rot_tail_masks_[level]; }

    explicit SchemeContext(const Params& params);

private:
    Params params_;
    mpz_class q_, delta_;
    std::unique_ptr<NttTables> ntt_q_, ntt_p_;
    mutable std::unique_ptr<NttTables> ntt_aux_;
    mutable std::mutex aux_mutex_;
    std::uint32_t decomp_base_bits_ = 16;
    std::uint32_t decomp_digits_ = 0;
    std::vector<std::uint64_t> slot_to_eval_;
    std::vector<std::uint64_t> rot_elts_;
    std::uint64_t col_swap_elt_ = 0;
    std::vector<Poly> rot_head_masks_, rot_tail_masks_;
};

struct SecretKey {
    std::uint64_t params_fp = 0;
    std::vector<std::int8_t> s;  // ternary coefficients
};

struct PublicKey {
    std::uint64_t params_fp = 0;
    Poly b, a;  // b = -(a*s + e)
};

/// Key-switch material: parts[j] = (-(a_j s + e_j) + base^j * target, a_j).
/// parts_ntt caches the evaluation-domain form (rebuilt on load, not serialized).
struct KswKey {
    std::uint64_t galois_elt = 0;  // 0 for the relinearization key
    std::vector<std::array<Poly, 2>> parts;
    std::vector<std::array<Poly, 2>> parts_ntt;
};

struct EvalKeys {
    std::uint64_t params_fp = 0;
    std::optional<KswKey> relin;                 // key-switch for s^2
    std::map<std::uint64_t, KswKey> galois;      // keyed by Galois element
    bool covers_rotations(const SchemeContext& scheme) const;
};

struct KeySet {
    SecretKey sk;
    PublicKey pk;
    EvalKeys evk;
};

struct KeyGenOptions {
    bool relin_key = true;
    bool rotation_keys = true;
};

struct Ciphertext : VectorPayload {
    std::uint64_t params_fp = 0;
    std::vector<Poly> polys;  // 2, or 3 before relinearization
};

/// Remaining noise headroom in bits; 0 means decryption is unreliable.
struct NoiseBudgetReading {
    std::int64_t bits = 0;
};

KeySet keygen(const Params& params, std::uint64_t seed, const KeyGenOptions& opts = {});

/// Batch (slot) encoding: values become the evaluations of the plaintext
/// polynomial at the CRT points, via the negacyclic NTT over Z_p.
Poly encode_batch(const SchemeContext& scheme, const std::vector<std::uint64_t>& values);
std::vector<std::uint64_t> decode_batch(const SchemeContext& scheme, const Poly& pt);

Ciphertext encrypt(const SchemeContext& scheme, const PublicKey& pk, const Poly& pt, Rng& rng);
/// Noiseless embedding (delta*m, 0); used for public constants.
Ciphertext trivial_encrypt(const SchemeContext& scheme, const Poly& pt);
std::vector<std::uint64_t> decrypt(const SchemeContext& scheme, const SecretKey& sk, const Ciphertext& ct);
NoiseBudgetReading noise_budget(const SchemeContext& scheme, const SecretKey& sk, const Ciphertext& ct);

Ciphertext add(const SchemeContext& scheme, const Ciphertext& a, const Ciphertext& b);
Ciphertext sub(const SchemeContext& scheme, const Ciphertext& a, const Ciphertext& b);
Ciphertext negate(const SchemeContext& scheme, const Ciphertext& a);
Ciphertext plain_mul(const SchemeContext& scheme, const Ciphertext& a, const Poly& pt);
Ciphertext plain_add(const SchemeContext& scheme, const Ciphertext& a, const Poly& pt);
/// Tensor, scale by p/q, then relinearize back to two polynomials.
Ciphertext mul(const SchemeContext& scheme, const Ciphertext& a, const Ciphertext& b, const KswKey& relin);
/// Exact cyclic rotation composed from power-of-two Galois rotations.
Ciphertext rotate(const SchemeContext& scheme, const Ciphertext& a, std::uint64_t k, const EvalKeys& evk,
                  TraceSink* sink = nullptr);

// --- serialization (bit-exact, little-endian; see storage.hpp for files) ---
std::vector<std::uint8_t> serialize_ciphertext(const SchemeContext& scheme, const Ciphertext& ct);
Ciphertext deserialize_ciphertext(const SchemeContext& scheme, const std::uint8_t* data, std::size_t size);
std::size_t serialized_ciphertext_size(const Params& params, std::uint32_t poly_count);

std::vector<std::uint8_t> serialize_secret_key(const Params& params, const SecretKey& sk);
SecretKey deserialize_secret_key(const Params& params, const std::vector<std::uint8_t>& data);
std::vector<std::uint8_t> serialize_public_key(const SchemeContext& scheme, const PublicKey& pk);
PublicKey deserialize_public_key(const SchemeContext& scheme, const std::vector<std::uint8_t>& data);
std::vector<std::uint8_t> serialize_eval_keys(const SchemeContext& scheme, const EvalKeys& evk);
EvalKeys deserialize_eval_keys(const SchemeContext& scheme, const std::vector<std::uint8_t>& data);

/// Evaluation-side view of the scheme: public/eval keys only, no secret key.
/// This is the only BFV surface the untrusted executor role touches.
class BfvContext : public HeContext {
public:
    BfvContext(const Params& params, std::shared_ptr<const EvalKeys> evk);

    Backend backend() const override { return Backend::bfv; }
    const SchemeContext& scheme() const { return *scheme_; }
    const EvalKeys& eval_keys() const { return *evk_; }

    HEVector wrap(Ciphertext ct, Rational depth, bool fresh) const;
    const Ciphertext& unwrap(const HEVector& v) const;

protected:
    std::shared_ptr<const VectorPayload> add_impl(const HEVector& a, const HEVector& b) const override;
    std::shared_ptr<const VectorPayload> sub_impl(const HEVector& a, const HEVector& b) const override;
    std::shared_ptr<const VectorPayload> neg_impl(const HEVector& a) const override;
    std::shared_ptr<const VectorPayload> mul_impl(const HEVector& a, const HEVector& b) const override;
    std::shared_ptr<const VectorPayload> plain_mul_impl(const HEVector& a, const PlainVector& m) const override;
    std::shared_ptr<const VectorPayload> plain_add_impl(const HEVector& a, const PlainVector& m) const override;
    std::shared_ptr<const VectorPayload> rotate_impl(const HEVector& a, std::uint64_t k) const override;
    std::shared_ptr<const VectorPayload> from_plain_impl(const PlainVector& values) const override;

private:
    std::shared_ptr<const SchemeContext> scheme_;
    std::shared_ptr<const EvalKeys> evk_;
};

/// Trusted-side helper: encrypts slot vectors into HEVectors.
class Encryptor {
public:
    Encryptor(const Params& params, PublicKey pk, std::uint64_t seed);
    HEVector encrypt_slots(const std::vector<std::uint64_t>& values) const;
    const SchemeContext& scheme() const { return *scheme_; }

private:
    std::shared_ptr<const SchemeContext> scheme_;
    PublicKey pk_;
    mutable Rng rng_;
};

/// Trusted-side helper: decrypts HEVectors and reads noise budgets.
class Decryptor {
public:
    Decryptor(const Params& params, SecretKey sk);
    std::vector<std::uint64_t> decrypt_slots(const HEVector& v) const;
    NoiseBudgetReading noise(const HEVector& v) const;

private:
    std::shared_ptr<const SchemeContext> scheme_;
    SecretKey sk_;
};

}  // namespace nshedb::bfv
