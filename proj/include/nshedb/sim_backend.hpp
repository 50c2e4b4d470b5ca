#pragma once

#include "nshedb/he_vector.hpp"

namespace nshedb {

/// Sim payload: the slot values themselves. Decryption of slot i IS payload i.
struct SimSlots : VectorPayload {
    explicit SimSlots(std::vector<std::uint64_t> v) : slots(std::move(v)) {}
    std::vector<std::uint64_t> slots;
};

/// Plaintext-simulation backend with exact depth accounting — the correctness
/// and cost oracle for every other module. Accepts any (power-of-two n, prime p);
/// the batching congruence is a BFV-only requirement.
class SimContext : public HeContext {
public:
    explicit SimContext(const Params& params) : HeContext(params) {}

    Backend backend() const override { return Backend::sim; }

    /// The tracked payload (what decryption would return).
    const std::vector<std::uint64_t>& payload(const HEVector& v) const;

protected:
    std::shared_ptr<const VectorPayload> add_impl(const HEVector& a, const HEVector& b) const override;
    std::shared_ptr<const VectorPayload> sub_impl(const HEVector& a, const HEVector& b) const override;
    std::shared_ptr<const VectorPayload> neg_impl(const HEVector& a) const override;
    std::shared_ptr<const VectorPayload> mul_impl(const HEVector& a, const HEVector& b) const override;
    std::shared_ptr<const VectorPayload> plain_mul_impl(const HEVector& a, const PlainVector& m) const override;
    std::shared_ptr<const VectorPayload> plain_add_impl(const HEVector& a, const PlainVector& m) const override;
    std::shared_ptr<const VectorPayload> rotate_impl(const HEVector& a, std::uint64_t k) const override;
    std::shared_ptr<const VectorPayload> from_plain_impl(const PlainVector& values) const override;
};

}  // namespace nshedb
