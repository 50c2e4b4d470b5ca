#include "nshedb/he_vector.hpp"

namespace nshedb {

const char* op_kind_name(OpKind k) {
    switch (k) {
        case OpKind::add: return "he_add";
        case OpKind::sub: return "he_sub";
        case OpKind::neg: return "he_neg";
        case OpKind::mul: return "he_mul";
        case OpKind::plain_mul: return "he_plain_mul";
        case OpKind::plain_add: return "he_plain_add";
        case OpKind::rotate: return "he_rotate";
        case OpKind::extract: return "extract";
        case OpKind::broadcast: return "broadcast";
        case OpKind::relinearize: return "relinearize";
        case OpKind::key_switch: return "key_switch";
        case OpKind::eq: return "eq";
        case OpKind::range_cmp: return "range_cmp";
        case OpKind::in_set: return "in_set";
        case OpKind::between: return "between";
        case OpKind::bool_op: return "bool_op";
        case OpKind::select_apply: return "select_apply";
        case OpKind::rotate_sum: return "rotate_sum";
        case OpKind::join_mask: return "join_mask";
        case OpKind::group_mask: return "group_mask";
        case OpKind::order_mask: return "order_mask";
        case OpKind::bootstrap: return "bootstrap";
        case OpKind::transcipher: return "transcipher";
        default: return "?";
    }
}

std::map<std::string, std::uint64_t> TraceSink::snapshot() const {
    std::map<std::string, std::uint64_t> out;
    for (std::size_t i = 0; i < static_cast<std::size_t>(OpKind::kCount); ++i) {
        std::uint64_t c = counts_[i].load(std::memory_order_relaxed);
        if (c) out[op_kind_name(static_cast<OpKind>(i))] = c;
    }
    return out;
}

PlainVector::PlainVector(std::vector<std::uint64_t> slots, const Params& params) : slots_(std::move(slots)) {
    if (slots_.size() != params.n)
        throw ShapeMismatch("plain vector length " + std::to_string(slots_.size()) + " != n=" +
                            std::to_string(params.n));
    for (auto& v : slots_)
        if (v >= params.p) throw EncodingError("plain slot value " + std::to_string(v) + " not reduced mod p");
}

PlainVector PlainVector::constant(std::uint64_t value, const Params& params) {
    return PlainVector(std::vector<std::uint64_t>(params.n, value % params.p), params);
}

PlainVector PlainVector::basis(std::uint64_t index, const Params& params) {
    if (index >= params.n) throw IndexOutOfRange("basis index " + std::to_string(index));
    std::vector<std::uint64_t> v(params.n, 0);
    v[index] = 1;
    return PlainVector(std::move(v), params);
}

HeContext::HeContext(const Params& params) : params_(params), budget_(params.depth_budget) {}

void HeContext::check_operand(const HEVector& a) const {
    if (!a.valid()) throw Error("operation on empty HEVector");
    if (a.backend() != backend()) throw BackendMismatch("vector backend differs from context");
    if (a.params_fingerprint() != params_.fingerprint())
        throw BackendMismatch("vector was produced under different params");
}

void HeContext::check_pair(const HEVector& a, const HEVector& b) const {
    check_operand(a);
    check_operand(b);
}

namespace {
thread_local int g_contract_scope_depth = 0;
}

DepthContractScope::DepthContractScope() { ++g_contract_scope_depth; }
DepthContractScope::~DepthContractScope() { --g_contract_scope_depth; }
bool DepthContractScope::active() { return g_contract_scope_depth > 0; }

HEVector HeContext::add(const HEVector& a, const HEVector& b) const {
    check_pair(a, b);
    hit(OpKind::add);
    Rational d = max(a.depth(), b.depth()) + Rational(1, static_cast<std::int64_t>(params_.p));
    return HEVector(backend(), add_impl(a, b), params_.fingerprint(), d, false);
}

HEVector HeContext::sub(const HEVector& a, const HEVector& b) const {
    check_pair(a, b);
    hit(OpKind::sub);
    Rational d = max(a.depth(), b.depth()) + Rational(1, static_cast<std::int64_t>(params_.p));
    return HEVector(backend(), sub_impl(a, b), params_.fingerprint(), d, false);
}

HEVector HeContext::neg(const HEVector& a) const {
    check_operand(a);
    hit(OpKind::neg);
    return HEVector(backend(), neg_impl(a), params_.fingerprint(), a.depth(), false);
}

HEVector HeContext::mul(const HEVector& a, const HEVector& b) const {
    check_pair(a, b);
    Rational d = max(a.depth(), b.depth()) + Rational(1);
    if (!DepthContractScope::active() && d > budget_) throw DepthBudgetExceeded(d, budget_);
    hit(OpKind::mul);
    return HEVector(backend(), mul_impl(a, b), params_.fingerprint(), d, false);
}

HEVector HeContext::plain_mul(const HEVector& a, const PlainVector& m) const {
    check_operand(a);
    if (m.size() != params_.n) throw ShapeMismatch("plain operand length");
    hit(OpKind::plain_mul);
    return HEVector(backend(), plain_mul_impl(a, m), params_.fingerprint(), a.depth(), false);
}

HEVector HeContext::plain_add(const HEVector& a, const PlainVector& m) const {
    check_operand(a);
    if (m.size() != params_.n) throw ShapeMismatch("plain operand length");
    hit(OpKind::plain_add);
    return HEVector(backend(), plain_add_impl(a, m), params_.fingerprint(), a.depth(), false);
}

HEVector HeContext::plain_add_scalar(const HEVector& a, std::uint64_t c) const {
    return plain_add(a, PlainVector::constant(c, params_));
}

HEVector HeContext::plain_sub_from_scalar(std::uint64_t c, const HEVector& a) const {
    return plain_add_scalar(neg(a), c);
}

HEVector HeContext::rotate(const HEVector& a, std::uint64_t k) const {
    check_operand(a);
    hit(OpKind::rotate);
    return HEVector(backend(), rotate_impl(a, k % params_.n), params_.fingerprint(), a.depth(), false);
}

HEVector HeContext::extract(const HEVector& a, std::uint64_t i) const {
    check_operand(a);
    if (i >= params_.n) throw IndexOutOfRange("extract slot " + std::to_string(i));
    hit(OpKind::extract);
    return HEVector(backend(), plain_mul_impl(a, PlainVector::basis(i, params_)), params_.fingerprint(),
                    a.depth(), false);
}

HEVector HeContext::broadcast(const HEVector& a, std::uint64_t i) const {
    check_operand(a);
    if (i >= params_.n) throw IndexOutOfRange("broadcast slot " + std::to_string(i));
    hit(OpKind::broadcast);
    DepthContractScope scope;
    HEVector acc = extract(a, i);
    for (std::uint64_t step = 1; step < params_.n; step <<= 1) {
        acc = add(acc, rotate(acc, step));
    }
    // Extract and broadcast are depth-free in the cost model: the Join depth
    // formula counts only the one ciphertext multiplication.
    return acc.with_depth(a.depth());
}

HEVector HeContext::from_plain(const PlainVector& values) const {
    return HEVector(backend(), from_plain_impl(values), params_.fingerprint(), Rational(0), true);
}

HEVector HeContext::from_scalar(std::uint64_t value) const {
    return from_plain(PlainVector::constant(value, params_));
}

}  // namespace nshedb
