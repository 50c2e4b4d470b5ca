#include "nshedb/bfv.hpp"
#include "nshedb/errors.hpp"

namespace nshedb::bfv {

BfvContext::BfvContext(const Params& params, std::shared_ptr<const EvalKeys> evk)
    : HeContext(params), scheme_(SchemeContext::get(params)), evk_(std::move(evk)) {
    if (evk_ && evk_->params_fp != params.fingerprint())
        throw BackendMismatch("eval keys were generated under different params");
}

HEVector BfvContext::wrap(Ciphertext ct, Rational depth, bool fresh) const {
    return HEVector(Backend::bfv, std::make_shared<Ciphertext>(std::move(ct)), params_.fingerprint(), depth,
                    fresh);
}

const Ciphertext& BfvContext::unwrap(const HEVector& v) const {
    return *static_cast<const Ciphertext*>(v.payload());
}

std::shared_ptr<const VectorPayload> BfvContext::add_impl(const HEVector& a, const HEVector& b) const {
    return std::make_shared<Ciphertext>(bfv::add(*scheme_, unwrap(a), unwrap(b)));
}

std::shared_ptr<const VectorPayload> BfvContext::sub_impl(const HEVector& a, const HEVector& b) const {
    return std::make_shared<Ciphertext>(bfv::sub(*scheme_, unwrap(a), unwrap(b)));
}

std::shared_ptr<const VectorPayload> BfvContext::neg_impl(const HEVector& a) const {
    return std::make_shared<Ciphertext>(bfv::negate(*scheme_, unwrap(a)));
}

std::shared_ptr<const VectorPayload> BfvContext::mul_impl(const HEVector& a, const HEVector& b) const {
    if (!evk_ || !evk_->relin) throw Error("bfv mul requires a relinearization key");
    auto out = std::make_shared<Ciphertext>(bfv::mul(*scheme_, unwrap(a), unwrap(b), *evk_->relin));
    if (sink_) sink_->hit(OpKind::relinearize);
    return out;
}

std::shared_ptr<const VectorPayload> BfvContext::plain_mul_impl(const HEVector& a, const PlainVector& m) const {
    return std::make_shared<Ciphertext>(bfv::plain_mul(*scheme_, unwrap(a), encode_batch(*scheme_, m.slots())));
}

std::shared_ptr<const VectorPayload> BfvContext::plain_add_impl(const HEVector& a, const PlainVector& m) const {
    return std::make_shared<Ciphertext>(bfv::plain_add(*scheme_, unwrap(a), encode_batch(*scheme_, m.slots())));
}

std::shared_ptr<const VectorPayload> BfvContext::rotate_impl(const HEVector& a, std::uint64_t k) const {
    if (!evk_) throw Error("bfv rotate requires Galois keys");
    return std::make_shared<Ciphertext>(bfv::rotate(*scheme_, unwrap(a), k, *evk_, sink_));
}

std::shared_ptr<const VectorPayload> BfvContext::from_plain_impl(const PlainVector& values) const {
    return std::make_shared<Ciphertext>(bfv::trivial_encrypt(*scheme_, encode_batch(*scheme_, values.slots())));
}

Encryptor::Encryptor(const Params& params, PublicKey pk, std::uint64_t seed)
    : scheme_(SchemeContext::get(params)), pk_(std::move(pk)), rng_(seed) {
    if (pk_.params_fp != params.fingerprint()) throw BackendMismatch("public key params");
}

HEVector Encryptor::encrypt_slots(const std::vector<std::uint64_t>& values) const {
    Ciphertext ct = bfv::encrypt(*scheme_, pk_, encode_batch(*scheme_, values), rng_);
    return HEVector(Backend::bfv, std::make_shared<Ciphertext>(std::move(ct)),
                    scheme_->params().fingerprint(), Rational(0), true);
}

Decryptor::Decryptor(const Params& params, SecretKey sk)
    : scheme_(SchemeContext::get(params)), sk_(std::move(sk)) {
    if (sk_.params_fp != params.fingerprint()) throw BackendMismatch("secret key params");
}

std::vector<std::uint64_t> Decryptor::decrypt_slots(const HEVector& v) const {
    if (v.backend() != Backend::bfv) throw BackendMismatch("decrypt of non-bfv vector");
    return bfv::decrypt(*scheme_, sk_, *static_cast<const Ciphertext*>(v.payload()));
}

NoiseBudgetReading Decryptor::noise(const HEVector& v) const {
    if (v.backend() != Backend::bfv) throw BackendMismatch("noise reading of non-bfv vector");
    return bfv::noise_budget(*scheme_, sk_, *static_cast<const Ciphertext*>(v.payload()));
}

}  // namespace nshedb::bfv
