#include "nshedb/sim_backend.hpp"

namespace nshedb {

namespace {

const std::vector<std::uint64_t>& slots_of(const HEVector& v) {
    return static_cast<const SimSlots*>(v.payload())->slots;
}

}  // namespace

const std::vector<std::uint64_t>& SimContext::payload(const HEVector& v) const {
    check_operand(v);
    return slots_of(v);
}

std::shared_ptr<const VectorPayload> SimContext::add_impl(const HEVector& a, const HEVector& b) const {
    const auto& x = slots_of(a);
    const auto& y = slots_of(b);
    std::vector<std::uint64_t> out(params_.n);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (x[i] + y[i]) % params_.p;
    return std::make_shared<SimSlots>(std::move(out));
}

std::shared_ptr<const VectorPayload> SimContext::sub_impl(const HEVector& a, const HEVector& b) const {
    const auto& x = slots_of(a);
    const auto& y = slots_of(b);
    std::vector<std::uint64_t> out(params_.n);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (x[i] + params_.p - y[i]) % params_.p;
    return std::make_shared<SimSlots>(std::move(out));
}

std::shared_ptr<const VectorPayload> SimContext::neg_impl(const HEVector& a) const {
    const auto& x = slots_of(a);
    std::vector<std::uint64_t> out(params_.n);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] == 0 ? 0 : params_.p - x[i];
    return std::make_shared<SimSlots>(std::move(out));
}

std::shared_ptr<const VectorPayload> SimContext::mul_impl(const HEVector& a, const HEVector& b) const {
    const auto& x = slots_of(a);
    const auto& y = slots_of(b);
    std::vector<std::uint64_t> out(params_.n);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x[i]) * y[i]) % params_.p);
    return std::make_shared<SimSlots>(std::move(out));
}

std::shared_ptr<const VectorPayload> SimContext::plain_mul_impl(const HEVector& a, const PlainVector& m) const {
    const auto& x = slots_of(a);
    std::vector<std::uint64_t> out(params_.n);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x[i]) * m[i]) % params_.p);
    return std::make_shared<SimSlots>(std::move(out));
}

std::shared_ptr<const VectorPayload> SimContext::plain_add_impl(const HEVector& a, const PlainVector& m) const {
    const auto& x = slots_of(a);
    std::vector<std::uint64_t> out(params_.n);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (x[i] + m[i]) % params_.p;
    return std::make_shared<SimSlots>(std::move(out));
}

std::shared_ptr<const VectorPayload> SimContext::rotate_impl(const HEVector& a, std::uint64_t k) const {
    const auto& x = slots_of(a);
    std::vector<std::uint64_t> out(params_.n);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[(i + k) % params_.n];
    return std::make_shared<SimSlots>(std::move(out));
}

std::shared_ptr<const VectorPayload> SimContext::from_plain_impl(const PlainVector& values) const {
    return std::make_shared<SimSlots>(values.slots());
}

}  // namespace nshedb
