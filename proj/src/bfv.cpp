#include "nshedb/bfv.hpp"

#include <cstring>

#include "nshedb/errors.hpp"

namespace nshedb::bfv {

namespace {

mpz_class centered(const mpz_class& v, const mpz_class& q) {
    return v * 2 > q ? mpz_class(v - q) : v;
}

/// Nearest integer to num/den (den > 0), ties toward +infinity.
mpz_class round_div(const mpz_class& num, const mpz_class& den) {
    mpz_class out;
    mpz_class t = num * 2 + den;
    mpz_fdiv_q(out.get_mpz_t(), t.get_mpz_t(), mpz_class(den * 2).get_mpz_t());
    return out;
}

Poly zero_poly(std::uint64_t n) { return Poly(n, mpz_class(0)); }

void poly_add_inplace(Poly& a, const Poly& b, const mpz_class& q) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] += b[i];
        if (a[i] >= q) a[i] -= q;
    }
}

void poly_sub_inplace(Poly& a, const Poly& b, const mpz_class& q) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] -= b[i];
        if (a[i] < 0) a[i] += q;
    }
}

Poly poly_neg(const Poly& a, const mpz_class& q) {
    Poly out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] == 0 ? mpz_class(0) : mpz_class(q - a[i]);
    return out;
}

/// a(X) -> a(X^t) mod (X^n + 1).
Poly automorphism(const Poly& a, std::uint64_t t, const mpz_class& q) {
    std::uint64_t n = a.size();
    std::uint64_t two_n = 2 * n;
    Poly out = zero_poly(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        std::uint64_t e = static_cast<std::uint64_t>((static_cast<unsigned __int128>(i) * t) % two_n);
        if (e < n) {
            out[e] += a[i];
            if (out[e] >= q) out[e] -= q;
        } else {
            out[e - n] -= a[i];
            if (out[e - n] < 0) out[e - n] += q;
        }
    }
    return out;
}

Poly ternary_poly(std::uint64_t n, const mpz_class& q, Rng& rng) {
    Poly out(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        int v = rng.ternary();
        out[i] = v < 0 ? mpz_class(q - 1) : mpz_class(v);
    }
    return out;
}

Poly noise_poly(std::uint64_t n, const mpz_class& q, Rng& rng) {
    Poly out(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        int v = rng.cbd_noise();
        out[i] = v < 0 ? mpz_class(q + v) : mpz_class(v);
    }
    return out;
}

std::vector<Poly> decompose_digits(const Poly& a, std::uint32_t base_bits, std::uint32_t digits) {
    std::vector<Poly> out(digits, zero_poly(a.size()));
    mpz_class c, digit;
    for (std::size_t i = 0; i < a.size(); ++i) {
        c = a[i];
        for (std::uint32_t j = 0; j < digits && c != 0; ++j) {
            mpz_fdiv_r_2exp(digit.get_mpz_t(), c.get_mpz_t(), base_bits);
            out[j][i] = digit;
            mpz_fdiv_q_2exp(c.get_mpz_t(), c.get_mpz_t(), base_bits);
        }
    }
    return out;
}

KswKey make_ksw_key(const SchemeContext& scheme, const Poly& s, const Poly& target, std::uint64_t galois_elt,
                    Rng& rng) {
    const mpz_class& q = scheme.q();
    std::uint64_t n = scheme.params().n;
    KswKey key;
    key.galois_elt = galois_elt;
    mpz_class base_pow = 1;
    for (std::uint32_t j = 0; j < scheme.decomp_digits(); ++j) {
        Poly a(n);
        for (auto& c : a) c = rng.uniform_mod(q);
        Poly e = noise_poly(n, q, rng);
        Poly b = scheme.ntt_q().multiply(a, s);
        poly_add_inplace(b, e, q);
        b = poly_neg(b, q);
        for (std::uint64_t i = 0; i < n; ++i) {
            b[i] += (target[i] * base_pow) % q;
            if (b[i] >= q) b[i] -= q;
        }
        key.parts_ntt.push_back({scheme.ntt_q().forwarded(b), scheme.ntt_q().forwarded(a)});
        key.parts.push_back({std::move(b), std::move(a)});
        base_pow <<= scheme.decomp_base_bits();
        base_pow %= q;
    }
    return key;
}

void prepare_ksw(const SchemeContext& scheme, KswKey& key) {
    key.parts_ntt.clear();
    for (auto& part : key.parts)
        key.parts_ntt.push_back({scheme.ntt_q().forwarded(part[0]), scheme.ntt_q().forwarded(part[1])});
}

/// Key-switches poly c (a coefficient on some foreign secret) back to s.
/// Returns the (c0, c1) contribution to add into the ciphertext.
std::array<Poly, 2> apply_ksw(const SchemeContext& scheme, const Poly& c, const KswKey& key) {
    const mpz_class& q = scheme.q();
    std::uint64_t n = scheme.params().n;
    auto digits = decompose_digits(c, scheme.decomp_base_bits(), scheme.decomp_digits());
    Poly acc0 = zero_poly(n), acc1 = zero_poly(n);
    for (std::uint32_t j = 0; j < digits.size(); ++j) {
        scheme.ntt_q().forward(digits[j]);
        scheme.ntt_q().pointwise_accum(acc0, digits[j], key.parts_ntt[j][0]);
        scheme.ntt_q().pointwise_accum(acc1, digits[j], key.parts_ntt[j][1]);
    }
    scheme.ntt_q().inverse(acc0);
    scheme.ntt_q().inverse(acc1);
    (void)q;
    return {std::move(acc0), std::move(acc1)};
}

Poly secret_as_poly(const SchemeContext& scheme, const SecretKey& sk) {
    Poly s(scheme.params().n);
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = sk.s[i] < 0 ? mpz_class(scheme.q() - 1) : mpz_class(sk.s[i]);
    return s;
}

Ciphertext automorph_ks(const SchemeContext& scheme, const Ciphertext& ct, std::uint64_t elt,
                        const EvalKeys& evk, TraceSink* sink) {
    if (ct.polys.size() != 2) throw Error("rotation requires a relinearized ciphertext");
    auto it = evk.galois.find(elt);
    if (it == evk.galois.end())
        throw Error("missing Galois key for element " + std::to_string(elt));
    Ciphertext out;
    out.params_fp = ct.params_fp;
    Poly p0 = automorphism(ct.polys[0], elt, scheme.q());
    Poly p1 = automorphism(ct.polys[1], elt, scheme.q());
    auto ks = apply_ksw(scheme, p1, it->second);
    poly_add_inplace(ks[0], p0, scheme.q());
    out.polys.push_back(std::move(ks[0]));
    out.polys.push_back(std::move(ks[1]));
    if (sink) sink->hit(OpKind::key_switch);
    return out;
}

}  // namespace

mpz_class Rng::uniform_mod(const mpz_class& m) {
    std::size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
    std::size_t words = (bits + 63) / 64;
    mpz_class r;
    while (true) {
        r = 0;
        for (std::size_t w = 0; w < words; ++w) {
            r <<= 64;
            r += mpz_class(eng_());
        }
        mpz_fdiv_r_2exp(r.get_mpz_t(), r.get_mpz_t(), bits);
        if (r < m) return r;
    }
}

int Rng::ternary() { return static_cast<int>(eng_() % 3) - 1; }

int Rng::cbd_noise() {
    // Sum of 20 bits minus sum of 20 bits: variance 10, sigma ~= 3.16.
    std::uint64_t w = eng_();
    int a = __builtin_popcountll(w & 0xFFFFFull);
    int b = __builtin_popcountll((w >> 20) & 0xFFFFFull);
    return a - b;
}

SchemeContext::SchemeContext(const Params& params) : params_(params) {
    if (params.n < 8) throw InvalidParams("bfv backend requires n >= 8");
    if (!params.batching_compatible())
        throw InvalidParams("p = " + std::to_string(params.p) + " is not 1 mod 2n (n=" +
                            std::to_string(params.n) + "); slot batching impossible");
    q_ = find_ntt_prime(params.q_bits, 2 * params.n);
    delta_ = q_ / params.p;
    ntt_q_ = std::make_unique<NttTables>(params.n, q_);
    ntt_p_ = std::make_unique<NttTables>(params.n, mpz_class(params.p));
    decomp_digits_ = (params.q_bits + decomp_base_bits_ - 1) / decomp_base_bits_;

    // Slot layout: two rows of n/2, row-major. Row 0 slot c sits at evaluation
    // exponent 3^c mod 2n, row 1 at -(3^c). sigma_{3^k} is then a left row
    // rotation by k and sigma_{-1} the row swap.
    std::uint64_t n = params.n;
    std::uint64_t two_n = 2 * n;
    slot_to_eval_.resize(n);
    std::uint64_t e = 1;
    for (std::uint64_t c = 0; c < n / 2; ++c) {
        slot_to_eval_[c] = (e - 1) / 2;
        slot_to_eval_[n / 2 + c] = (two_n - e - 1) / 2;
        e = (e * 3) % two_n;
    }

    std::uint32_t levels = ceil_log2_u64(n / 2);
    std::uint64_t g = 3;
    for (std::uint32_t j = 0; j < levels; ++j) {
        rot_elts_.push_back(g);
        g = static_cast<std::uint64_t>((static_cast<unsigned __int128>(g) * g) % two_n);
    }
    col_swap_elt_ = two_n - 1;

    for (std::uint32_t j = 0; j < levels; ++j) {
        std::uint64_t k = 1ull << j;
        std::vector<std::uint64_t> head(n, 0), tail(n, 0);
        for (std::uint64_t c = 0; c < n / 2; ++c) {
            bool same_row = c < n / 2 - k;
            head[c] = same_row ? 1 : 0;
            head[n / 2 + c] = same_row ? 1 : 0;
            tail[c] = same_row ? 0 : 1;
            tail[n / 2 + c] = same_row ? 0 : 1;
        }
        Poly head_pt = encode_batch(*this, head);
        Poly tail_pt = encode_batch(*this, tail);
        rot_head_masks_.push_back(ntt_q_->forwarded(head_pt));
        rot_tail_masks_.push_back(ntt_q_->forwarded(tail_pt));
    }
}

const NttTables& SchemeContext::ntt_aux() const {
    std::lock_guard<std::mutex> lock(aux_mutex_);
    if (!ntt_aux_) {
        std::uint32_t bits = 2 * params_.q_bits + ceil_log2_u64(params_.n) + 4;
        ntt_aux_ = std::make_unique<NttTables>(params_.n, find_ntt_prime(bits, 2 * params_.n));
    }
    return *ntt_aux_;
}

std::vector<std::uint64_t> SchemeContext::required_galois_elts() const {
    std::vector<std::uint64_t> elts(rot_elts_);
    elts.push_back(col_swap_elt_);
    return elts;
}

std::shared_ptr<const SchemeContext> SchemeContext::get(const Params& params) {
    static std::mutex mu;
    static std::map<std::uint64_t, std::shared_ptr<const SchemeContext>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(params.fingerprint());
    if (it != cache.end()) return it->second;
    auto ctx = std::make_shared<const SchemeContext>(params);
    cache[params.fingerprint()] = ctx;
    return ctx;
}

bool EvalKeys::covers_rotations(const SchemeContext& scheme) const {
    for (auto elt : scheme.required_galois_elts())
        if (!galois.count(elt)) return false;
    return true;
}

KeySet keygen(const Params& params, std::uint64_t seed, const KeyGenOptions& opts) {
    auto scheme = SchemeContext::get(params);
    const mpz_class& q = scheme->q();
    std::uint64_t n = params.n;
    Rng rng(seed);

    KeySet keys;
    keys.sk.params_fp = params.fingerprint();
    keys.sk.s.resize(n);
    for (auto& c : keys.sk.s) c = static_cast<std::int8_t>(rng.ternary());
    Poly s = secret_as_poly(*scheme, keys.sk);

    Poly a(n);
    for (auto& c : a) c = rng.uniform_mod(q);
    Poly e = noise_poly(n, q, rng);
    Poly b = scheme->ntt_q().multiply(a, s);
    poly_add_inplace(b, e, q);
    keys.pk.params_fp = params.fingerprint();
    keys.pk.b = poly_neg(b, q);
    keys.pk.a = std::move(a);

    keys.evk.params_fp = params.fingerprint();
    if (opts.relin_key) {
        Poly s2 = scheme->ntt_q().multiply(s, s);
        keys.evk.relin = make_ksw_key(*scheme, s, s2, 0, rng);
    }
    if (opts.rotation_keys) {
        for (auto elt : scheme->required_galois_elts()) {
            Poly s_t = automorphism(s, elt, q);
            keys.evk.galois.emplace(elt, make_ksw_key(*scheme, s, s_t, elt, rng));
        }
    }
    return keys;
}

Poly encode_batch(const SchemeContext& scheme, const std::vector<std::uint64_t>& values) {
    std::uint64_t n = scheme.params().n;
    if (values.size() > n) throw EncodingError("more than n values to encode");
    Poly evals = zero_poly(n);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] >= scheme.params().p) throw EncodingError("slot value not reduced mod p");
        evals[scheme.slot_to_eval(i)] = values[i];
    }
    scheme.ntt_p().inverse(evals);
    return evals;
}

std::vector<std::uint64_t> decode_batch(const SchemeContext& scheme, const Poly& pt) {
    Poly evals = pt;
    scheme.ntt_p().forward(evals);
    std::uint64_t n = scheme.params().n;
    std::vector<std::uint64_t> out(n);
    for (std::uint64_t i = 0; i < n; ++i) out[i] = evals[scheme.slot_to_eval(i)].get_ui();
    return out;
}

Ciphertext encrypt(const SchemeContext& scheme, const PublicKey& pk, const Poly& pt, Rng& rng) {
    if (pk.params_fp != scheme.params().fingerprint()) throw BackendMismatch("public key params");
    const mpz_class& q = scheme.q();
    std::uint64_t n = scheme.params().n;
    Poly u = ternary_poly(n, q, rng);
    Poly c0 = scheme.ntt_q().multiply(pk.b, u);
    poly_add_inplace(c0, noise_poly(n, q, rng), q);
    for (std::uint64_t i = 0; i < n; ++i) {
        c0[i] += scheme.delta() * pt[i];
        c0[i] %= q;
    }
    Poly c1 = scheme.ntt_q().multiply(pk.a, u);
    poly_add_inplace(c1, noise_poly(n, q, rng), q);
    Ciphertext ct;
    ct.params_fp = scheme.params().fingerprint();
    ct.polys.push_back(std::move(c0));
    ct.polys.push_back(std::move(c1));
    return ct;
}

Ciphertext trivial_encrypt(const SchemeContext& scheme, const Poly& pt) {
    std::uint64_t n = scheme.params().n;
    Ciphertext ct;
    ct.params_fp = scheme.params().fingerprint();
    Poly c0(n);
    for (std::uint64_t i = 0; i < n; ++i) c0[i] = (scheme.delta() * pt[i]) % scheme.q();
    ct.polys.push_back(std::move(c0));
    ct.polys.push_back(zero_poly(n));
    return ct;
}

namespace {

Poly decrypt_phase(const SchemeContext& scheme, const SecretKey& sk, const Ciphertext& ct) {
    const mpz_class& q = scheme.q();
    Poly s = secret_as_poly(scheme, sk);
    Poly v = ct.polys[0];
    Poly s_pow = s;
    for (std::size_t i = 1; i < ct.polys.size(); ++i) {
        poly_add_inplace(v, scheme.ntt_q().multiply(ct.polys[i], s_pow), q);
        if (i + 1 < ct.polys.size()) s_pow = scheme.ntt_q().multiply(s_pow, s);
    }
    return v;
}

}  // namespace

std::vector<std::uint64_t> decrypt(const SchemeContext& scheme, const SecretKey& sk, const Ciphertext& ct) {
    if (sk.params_fp != scheme.params().fingerprint()) throw BackendMismatch("secret key params");
    Poly v = decrypt_phase(scheme, sk, ct);
    const mpz_class p(scheme.params().p);
    Poly pt(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        mpz_class m = round_div(p * centered(v[i], scheme.q()), scheme.q());
        mpz_fdiv_r(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        pt[i] = m;
    }
    return decode_batch(scheme, pt);
}

NoiseBudgetReading noise_budget(const SchemeContext& scheme, const SecretKey& sk, const Ciphertext& ct) {
    Poly v = decrypt_phase(scheme, sk, ct);
    const mpz_class& q = scheme.q();
    const mpz_class p(scheme.params().p);
    mpz_class max_eps = 0;
    for (auto& vi : v) {
        mpz_class num = p * centered(vi, q);
        mpz_class eps = num - q * round_div(num, q);
        if (eps < 0) eps = -eps;
        if (eps > max_eps) max_eps = eps;
    }
    NoiseBudgetReading r;
    if (max_eps == 0) {
        r.bits = scheme.params().q_bits;
        return r;
    }
    mpz_class t = max_eps * 2;
    while (t <= q) {
        t <<= 1;
        ++r.bits;
    }
    return r;
}

Ciphertext add(const SchemeContext& scheme, const Ciphertext& a, const Ciphertext& b) {
    Ciphertext out = a;
    out.polys.resize(std::max(a.polys.size(), b.polys.size()), zero_poly(scheme.params().n));
    for (std::size_t i = 0; i < b.polys.size(); ++i) poly_add_inplace(out.polys[i], b.polys[i], scheme.q());
    return out;
}

Ciphertext sub(const SchemeContext& scheme, const Ciphertext& a, const Ciphertext& b) {
    Ciphertext out = a;
    out.polys.resize(std::max(a.polys.size(), b.polys.size()), zero_poly(scheme.params().n));
    for (std::size_t i = 0; i < b.polys.size(); ++i) poly_sub_inplace(out.polys[i], b.polys[i], scheme.q());
    return out;
}

Ciphertext negate(const SchemeContext& scheme, const Ciphertext& a) {
    Ciphertext out;
    out.params_fp = a.params_fp;
    for (auto& poly : a.polys) out.polys.push_back(poly_neg(poly, scheme.q()));
    return out;
}

Ciphertext plain_mul(const SchemeContext& scheme, const Ciphertext& a, const Poly& pt) {
    Ciphertext out;
    out.params_fp = a.params_fp;
    for (auto& poly : a.polys) out.polys.push_back(scheme.ntt_q().multiply(poly, pt));
    return out;
}

Ciphertext plain_add(const SchemeContext& scheme, const Ciphertext& a, const Poly& pt) {
    Ciphertext out = a;
    for (std::size_t i = 0; i < pt.size(); ++i) {
        out.polys[0][i] += scheme.delta() * pt[i];
        out.polys[0][i] %= scheme.q();
    }
    return out;
}

Ciphertext mul(const SchemeContext& scheme, const Ciphertext& a, const Ciphertext& b, const KswKey& relin) {
    if (a.polys.size() != 2 || b.polys.size() != 2) throw Error("mul expects relinearized operands");
    const mpz_class& q = scheme.q();
    const NttTables& aux = scheme.ntt_aux();
    const mpz_class& Q = aux.modulus();
    std::uint64_t n = scheme.params().n;

    // Lift centered representatives into the wide modulus so the tensor
    // products are exact over the integers.
    auto lift = [&](const Poly& x) {
        Poly out(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            mpz_class c = centered(x[i], q);
            out[i] = c < 0 ? mpz_class(Q + c) : c;
        }
        aux.forward(out);
        return out;
    };
    Poly fa0 = lift(a.polys[0]), fa1 = lift(a.polys[1]);
    Poly fb0 = lift(b.polys[0]), fb1 = lift(b.polys[1]);

    Poly d0(n), d1(n), d2(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        d0[i] = (fa0[i] * fb0[i]) % Q;
        d1[i] = (fa0[i] * fb1[i] + fa1[i] * fb0[i]) % Q;
        d2[i] = (fa1[i] * fb1[i]) % Q;
    }
    aux.inverse(d0);
    aux.inverse(d1);
    aux.inverse(d2);

    const mpz_class p(scheme.params().p);
    auto scale_down = [&](Poly& x) {
        for (auto& c : x) {
            mpz_class v = round_div(p * centered(c, Q), q);
            mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), q.get_mpz_t());
            c = v;
        }
    };
    scale_down(d0);
    scale_down(d1);
    scale_down(d2);

    auto ks = apply_ksw(scheme, d2, relin);
    poly_add_inplace(d0, ks[0], q);
    poly_add_inplace(d1, ks[1], q);

    Ciphertext out;
    out.params_fp = a.params_fp;
    out.polys.push_back(std::move(d0));
    out.polys.push_back(std::move(d1));
    return out;
}

Ciphertext rotate(const SchemeContext& scheme, const Ciphertext& a, std::uint64_t k, const EvalKeys& evk,
                  TraceSink* sink) {
    std::uint64_t n = scheme.params().n;
    k %= n;
    Ciphertext cur = a;
    for (std::uint32_t level = 0; level < scheme.rotation_levels(); ++level) {
        if (k & (1ull << level)) {
            Ciphertext r = automorph_ks(scheme, cur, scheme.rotation_elt(level), evk, sink);
            Ciphertext c = automorph_ks(scheme, r, scheme.col_swap_elt(), evk, sink);
            Ciphertext out;
            out.params_fp = cur.params_fp;
            for (std::size_t i = 0; i < 2; ++i) {
                Poly piece = scheme.ntt_q().multiply_eval(r.polys[i], scheme.rot_head_mask_eval(level));
                Poly wrap = scheme.ntt_q().multiply_eval(c.polys[i], scheme.rot_tail_mask_eval(level));
                poly_add_inplace(piece, wrap, scheme.q());
                out.polys.push_back(std::move(piece));
            }
            cur = std::move(out);
        }
    }
    if (k & (n / 2)) cur = automorph_ks(scheme, cur, scheme.col_swap_elt(), evk, sink);
    return cur;
}

// --- serialization: fixed header then little-endian fixed-width coefficients ---

namespace {

constexpr char kCtMagic[4] = {'N', 'S', 'H', 'E'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t*& p, const std::uint8_t* end) {
    if (end - p < 4) throw SerializationError("truncated u32");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(*p++) << (8 * i);
    return v;
}

std::uint64_t get_u64(const std::uint8_t*& p, const std::uint8_t* end) {
    if (end - p < 8) throw SerializationError("truncated u64");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(*p++) << (8 * i);
    return v;
}

void put_coeff(std::vector<std::uint8_t>& out, const mpz_class& c, std::uint32_t width) {
    std::size_t start = out.size();
    out.resize(start + width, 0);
    std::size_t count = 0;
    mpz_export(out.data() + start, &count, -1, 1, 0, 0, c.get_mpz_t());
    if (count > width) throw SerializationError("coefficient wider than q_bits allows");
}

mpz_class get_coeff(const std::uint8_t*& p, const std::uint8_t* end, std::uint32_t width) {
    if (static_cast<std::size_t>(end - p) < width) throw SerializationError("truncated coefficient");
    mpz_class c;
    mpz_import(c.get_mpz_t(), width, -1, 1, 0, 0, p);
    p += width;
    return c;
}

void put_poly(std::vector<std::uint8_t>& out, const Poly& poly, std::uint32_t width) {
    for (auto& c : poly) put_coeff(out, c, width);
}

Poly get_poly(const std::uint8_t*& p, const std::uint8_t* end, std::uint64_t n, std::uint32_t width) {
    Poly poly(n);
    for (auto& c : poly) c = get_coeff(p, end, width);
    return poly;
}

}  // namespace

std::size_t serialized_ciphertext_size(const Params& params, std::uint32_t poly_count) {
    return 32 + static_cast<std::size_t>(poly_count) * params.n * ((params.q_bits + 7) / 8);
}

std::vector<std::uint8_t> serialize_ciphertext(const SchemeContext& scheme, const Ciphertext& ct) {
    const Params& params = scheme.params();
    std::vector<std::uint8_t> out;
    out.reserve(serialized_ciphertext_size(params, static_cast<std::uint32_t>(ct.polys.size())));
    out.insert(out.end(), kCtMagic, kCtMagic + 4);
    put_u32(out, kVersion);
    put_u64(out, params.n);
    put_u32(out, params.q_bits);
    put_u64(out, params.p);
    put_u32(out, static_cast<std::uint32_t>(ct.polys.size()));
    for (auto& poly : ct.polys) put_poly(out, poly, scheme.bytes_per_coeff());
    return out;
}

Ciphertext deserialize_ciphertext(const SchemeContext& scheme, const std::uint8_t* data, std::size_t size) {
    const std::uint8_t* p = data;
    const std::uint8_t* end = data + size;
    if (size < 32 || std::memcmp(p, kCtMagic, 4) != 0) throw SerializationError("bad ciphertext magic");
    p += 4;
    if (get_u32(p, end) != kVersion) throw SerializationError("unsupported ciphertext version");
    const Params& params = scheme.params();
    if (get_u64(p, end) != params.n) throw SerializationError("ciphertext n mismatch");
    if (get_u32(p, end) != params.q_bits) throw SerializationError("ciphertext q_bits mismatch");
    if (get_u64(p, end) != params.p) throw SerializationError("ciphertext p mismatch");
    std::uint32_t poly_count = get_u32(p, end);
    if (poly_count < 2 || poly_count > 3) throw SerializationError("bad poly count");
    Ciphertext ct;
    ct.params_fp = params.fingerprint();
    for (std::uint32_t i = 0; i < poly_count; ++i) {
        ct.polys.push_back(get_poly(p, end, params.n, scheme.bytes_per_coeff()));
        for (auto& c : ct.polys.back())
            if (c >= scheme.q()) throw SerializationError("coefficient out of range");
    }
    if (p != end) throw SerializationError("trailing ciphertext bytes");
    return ct;
}

std::vector<std::uint8_t> serialize_secret_key(const Params& params, const SecretKey& sk) {
    std::vector<std::uint8_t> out = {'N', 'S', 'H', 'K'};
    put_u32(out, kVersion);
    put_u64(out, params.fingerprint());
    put_u64(out, params.n);
    for (auto c : sk.s) out.push_back(static_cast<std::uint8_t>(c));
    return out;
}

SecretKey deserialize_secret_key(const Params& params, const std::vector<std::uint8_t>& data) {
    const std::uint8_t* p = data.data();
    const std::uint8_t* end = p + data.size();
    if (data.size() < 24 || std::memcmp(p, "NSHK", 4) != 0) throw SerializationError("bad secret key magic");
    p += 4;
    if (get_u32(p, end) != kVersion) throw SerializationError("unsupported key version");
    if (get_u64(p, end) != params.fingerprint()) throw SerializationError("secret key params mismatch");
    std::uint64_t n = get_u64(p, end);
    if (n != params.n || static_cast<std::uint64_t>(end - p) != n) throw SerializationError("secret key length");
    SecretKey sk;
    sk.params_fp = params.fingerprint();
    sk.s.resize(n);
    for (auto& c : sk.s) c = static_cast<std::int8_t>(*p++);
    return sk;
}

std::vector<std::uint8_t> serialize_public_key(const SchemeContext& scheme, const PublicKey& pk) {
    std::vector<std::uint8_t> out = {'N', 'S', 'H', 'P'};
    put_u32(out, kVersion);
    put_u64(out, scheme.params().fingerprint());
    put_poly(out, pk.b, scheme.bytes_per_coeff());
    put_poly(out, pk.a, scheme.bytes_per_coeff());
    return out;
}

PublicKey deserialize_public_key(const SchemeContext& scheme, const std::vector<std::uint8_t>& data) {
    const std::uint8_t* p = data.data();
    const std::uint8_t* end = p + data.size();
    if (data.size() < 16 || std::memcmp(p, "NSHP", 4) != 0) throw SerializationError("bad public key magic");
    p += 4;
    if (get_u32(p, end) != kVersion) throw SerializationError("unsupported key version");
    if (get_u64(p, end) != scheme.params().fingerprint()) throw SerializationError("public key params mismatch");
    PublicKey pk;
    pk.params_fp = scheme.params().fingerprint();
    pk.b = get_poly(p, end, scheme.params().n, scheme.bytes_per_coeff());
    pk.a = get_poly(p, end, scheme.params().n, scheme.bytes_per_coeff());
    if (p != end) throw SerializationError("trailing public key bytes");
    return pk;
}

namespace {

void put_ksw(std::vector<std::uint8_t>& out, const KswKey& key, std::uint32_t width) {
    put_u64(out, key.galois_elt);
    put_u32(out, static_cast<std::uint32_t>(key.parts.size()));
    for (auto& part : key.parts) {
        put_poly(out, part[0], width);
        put_poly(out, part[1], width);
    }
}

KswKey get_ksw(const std::uint8_t*& p, const std::uint8_t* end, std::uint64_t n, std::uint32_t width) {
    KswKey key;
    key.galois_elt = get_u64(p, end);
    std::uint32_t parts = get_u32(p, end);
    for (std::uint32_t i = 0; i < parts; ++i) {
        Poly b = get_poly(p, end, n, width);
        Poly a = get_poly(p, end, n, width);
        key.parts.push_back({std::move(b), std::move(a)});
    }
    return key;
}

}  // namespace

std::vector<std::uint8_t> serialize_eval_keys(const SchemeContext& scheme, const EvalKeys& evk) {
    std::vector<std::uint8_t> out = {'N', 'S', 'H', 'R'};
    put_u32(out, kVersion);
    put_u64(out, scheme.params().fingerprint());
    out.push_back(evk.relin ? 1 : 0);
    if (evk.relin) put_ksw(out, *evk.relin, scheme.bytes_per_coeff());
    put_u32(out, static_cast<std::uint32_t>(evk.galois.size()));
    for (auto& [elt, key] : evk.galois) put_ksw(out, key, scheme.bytes_per_coeff());
    return out;
}

EvalKeys deserialize_eval_keys(const SchemeContext& scheme, const std::vector<std::uint8_t>& data) {
    const std::uint8_t* p = data.data();
    const std::uint8_t* end = p + data.size();
    if (data.size() < 17 || std::memcmp(p, "NSHR", 4) != 0) throw SerializationError("bad eval key magic");
    p += 4;
    if (get_u32(p, end) != kVersion) throw SerializationError("unsupported key version");
    if (get_u64(p, end) != scheme.params().fingerprint()) throw SerializationError("eval key params mismatch");
    EvalKeys evk;
    evk.params_fp = scheme.params().fingerprint();
    std::uint8_t has_relin = *p++;
    if (has_relin) {
        evk.relin = get_ksw(p, end, scheme.params().n, scheme.bytes_per_coeff());
        prepare_ksw(scheme, *evk.relin);
    }
    std::uint32_t count = get_u32(p, end);
    for (std::uint32_t i = 0; i < count; ++i) {
        KswKey key = get_ksw(p, end, scheme.params().n, scheme.bytes_per_coeff());
        prepare_ksw(scheme, key);
        std::uint64_t elt = key.galois_elt;
        evk.galois.emplace(elt, std::move(key));
    }
    if (p != end) throw SerializationError("trailing eval key bytes");
    return evk;
}

}  // namespace nshedb::bfv
