#include "nshedb/predicate_ops.hpp"

#include <map>

#include "nshedb/errors.hpp"

namespace nshedb {

Rational eq_depth_increment(std::uint64_t p) { return Rational(ceil_log2_u64(p - 1)); }

Rational cmp_depth_increment(std::uint64_t p) {
    return eq_depth_increment(p) + Rational(ceil_log2_u64((p - 1) / 2), static_cast<std::int64_t>(p));
}

Rational in_depth_increment(std::uint64_t p, std::uint64_t k) {
    return eq_depth_increment(p) + Rational(ceil_log2_u64(k), static_cast<std::int64_t>(p));
}

Rational between_depth_increment(std::uint64_t p, std::int64_t lo, std::int64_t hi) {
    std::uint64_t k = static_cast<std::uint64_t>(hi - lo + 1);
    if (k <= (p - 1) / 2) return in_depth_increment(p, k);
    return cmp_depth_increment(p) + Rational(1);
}

std::uint64_t encode_signed(std::int64_t v, std::uint64_t p) {
    std::int64_t sp = static_cast<std::int64_t>(p);
    std::int64_t r = v % sp;
    if (r < 0) r += sp;
    return static_cast<std::uint64_t>(r);
}

std::int64_t decode_signed(std::uint64_t r, std::uint64_t p) {
    return r > (p - 1) / 2 ? static_cast<std::int64_t>(r) - static_cast<std::int64_t>(p)
                           : static_cast<std::int64_t>(r);
}

HEVector pow_fermat(const HeContext& ctx, const HEVector& x, std::uint64_t e) {
    if (e == 0) throw Error("pow_fermat: zero exponent");
    std::map<std::uint64_t, HEVector> memo;
    memo.emplace(1, x);
    // Recursive halving: x^e = x^ceil(e/2) * x^floor(e/2); the two halves share
    // sub-exponents, so the chain stays within 2*log2(e) multiplications and
    // depth exactly ceil(log2(e)).
    auto rec = [&](auto&& self, std::uint64_t m) -> const HEVector& {
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
        const HEVector& hi = self(self, (m + 1) / 2);
        const HEVector& lo = self(self, m / 2);
        return memo.emplace(m, ctx.mul(hi, lo)).first->second;
    };
    return rec(rec, e);
}

HEVector balanced_add(const HeContext& ctx, std::vector<HEVector> terms) {
    if (terms.empty()) throw Error("balanced_add: no terms");
    while (terms.size() > 1) {
        std::vector<HEVector> next;
        next.reserve((terms.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < terms.size(); i += 2) next.push_back(ctx.add(terms[i], terms[i + 1]));
        if (terms.size() % 2) next.push_back(terms.back());
        terms = std::move(next);
    }
    return terms[0];
}

namespace {

void check_contract_budget(const HeContext& ctx, Rational required) {
    if (!DepthContractScope::active() && required > ctx.budget())
        throw DepthBudgetExceeded(required, ctx.budget());
}

/// 1 - diff^(p-1); the caller supplies the difference.
HEVector fermat_zero_indicator(const HeContext& ctx, const HEVector& diff) {
    return ctx.plain_sub_from_scalar(1, pow_fermat(ctx, diff, ctx.params().p - 1));
}

/// Sum over the negative range of shifted zero indicators (the less-than
/// kernel); diff = x - y at the slot level.
HEVector negative_range_sum(const HeContext& ctx, const HEVector& diff) {
    std::uint64_t half = ctx.params().half_range();
    std::vector<HEVector> terms;
    terms.reserve(half);
    // Term for a = -j tests diff == -j, i.e. (diff + j)^(p-1) vanishing.
    for (std::uint64_t j = 1; j <= half; ++j)
        terms.push_back(fermat_zero_indicator(ctx, ctx.plain_add_scalar(diff, j)));
    return balanced_add(ctx, std::move(terms));
}

}  // namespace

MaskVector eq(const HeContext& ctx, const HEVector& x, const HEVector& y) {
    Rational required = max(x.depth(), y.depth()) + eq_depth_increment(ctx.params().p);
    check_contract_budget(ctx, required);
    if (ctx.trace_sink()) ctx.trace_sink()->hit(OpKind::eq);
    DepthContractScope scope;
    return fermat_zero_indicator(ctx, ctx.sub(x, y)).with_depth(required);
}

MaskVector eq_plain(const HeContext& ctx, const HEVector& x, std::uint64_t value) {
    if (value >= ctx.params().p) throw EncodingError("comparison constant not reduced mod p");
    Rational required = x.depth() + eq_depth_increment(ctx.params().p);
    check_contract_budget(ctx, required);
    if (ctx.trace_sink()) ctx.trace_sink()->hit(OpKind::eq);
    DepthContractScope scope;
    HEVector diff = ctx.plain_add_scalar(x, (ctx.params().p - value) % ctx.params().p);
    return fermat_zero_indicator(ctx, diff).with_depth(required);
}

MaskVector lt(const HeContext& ctx, const HEVector& x, const HEVector& y) {
    Rational required = max(x.depth(), y.depth()) + cmp_depth_increment(ctx.params().p);
    check_contract_budget(ctx, required);
    if (ctx.trace_sink()) ctx.trace_sink()->hit(OpKind::range_cmp);
    DepthContractScope scope;
    return negative_range_sum(ctx, ctx.sub(x, y)).with_depth(required);
}

MaskVector gt(const HeContext& ctx, const HEVector& x, const HEVector& y) { return lt(ctx, y, x); }

MaskVector leq(const HeContext& ctx, const HEVector& x, const HEVector& y) {
    return ctx.plain_sub_from_scalar(1, gt(ctx, x, y));
}

MaskVector geq(const HeContext& ctx, const HEVector& x, const HEVector& y) {
    return ctx.plain_sub_from_scalar(1, lt(ctx, x, y));
}

MaskVector lt_plain(const HeContext& ctx, const HEVector& x, std::int64_t value) {
    Rational required = x.depth() + cmp_depth_increment(ctx.params().p);
    check_contract_budget(ctx, required);
    if (ctx.trace_sink()) ctx.trace_sink()->hit(OpKind::range_cmp);
    DepthContractScope scope;
    std::uint64_t enc = encode_signed(value, ctx.params().p);
    HEVector diff = ctx.plain_add_scalar(x, (ctx.params().p - enc) % ctx.params().p);
    return negative_range_sum(ctx, diff).with_depth(required);
}

MaskVector gt_plain(const HeContext& ctx, const HEVector& x, std::int64_t value) {
    Rational required = x.depth() + cmp_depth_increment(ctx.params().p);
    check_contract_budget(ctx, required);
    if (ctx.trace_sink()) ctx.trace_sink()->hit(OpKind::range_cmp);
    DepthContractScope scope;
    std::uint64_t enc = encode_signed(value, ctx.params().p);
    HEVector diff = ctx.plain_sub_from_scalar(enc, x);  // value - x
    return negative_range_sum(ctx, diff).with_depth(required);
}

MaskVector leq_plain(const HeContext& ctx, const HEVector& x, std::int64_t value) {
    return ctx.plain_sub_from_scalar(1, gt_plain(ctx, x, value));
}

MaskVector geq_plain(const HeContext& ctx, const HEVector& x, std::int64_t value) {
    return ctx.plain_sub_from_scalar(1, lt_plain(ctx, x, value));
}

MaskVector in_set(const HeContext& ctx, const HEVector& x, const std::vector<std::uint64_t>& set) {
    if (set.empty()) throw Error("in_set: empty set");
    Rational required = x.depth() + in_depth_increment(ctx.params().p, set.size());
    check_contract_budget(ctx, required);
    if (ctx.trace_sink()) ctx.trace_sink()->hit(OpKind::in_set);
    DepthContractScope scope;
    std::vector<HEVector> terms;
    terms.reserve(set.size());
    for (auto v : set) terms.push_back(eq_plain(ctx, x, v));
    return balanced_add(ctx, std::move(terms)).with_depth(required);
}

MaskVector between(const HeContext& ctx, const HEVector& x, std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw Error("between: lo > hi");
    std::uint64_t p = ctx.params().p;
    std::uint64_t k = static_cast<std::uint64_t>(hi - lo + 1);
    if (ctx.trace_sink()) ctx.trace_sink()->hit(OpKind::between);
    if (k <= ctx.params().half_range()) {
        std::vector<std::uint64_t> values;
        values.reserve(k);
        for (std::int64_t v = lo; v <= hi; ++v) values.push_back(encode_signed(v, p));
        return in_set(ctx, x, values);
    }
    return ctx.mul(geq_plain(ctx, x, lo), leq_plain(ctx, x, hi));
}

MaskVector between_vec(const HeContext& ctx, const HEVector& x, const HEVector& lo, const HEVector& hi) {
    if (ctx.trace_sink()) ctx.trace_sink()->hit(OpKind::between);
    return ctx.mul(geq(ctx, x, lo), leq(ctx, x, hi));
}

MaskVector bool_and(const HeContext& ctx, const MaskVector& a, const MaskVector& b) {
    if (ctx.trace_sink()) ctx.trace_sink()->hit(OpKind::bool_op);
    return ctx.mul(a, b);
}

MaskVector bool_or(const HeContext& ctx, const MaskVector& a, const MaskVector& b) {
    Rational required = max(a.depth(), b.depth()) + Rational(1);
    check_contract_budget(ctx, required);
    if (ctx.trace_sink()) ctx.trace_sink()->hit(OpKind::bool_op);
    DepthContractScope scope;
    return ctx.sub(ctx.add(a, b), ctx.mul(a, b)).with_depth(required);
}

MaskVector bool_not(const HeContext& ctx, const MaskVector& a) {
    if (ctx.trace_sink()) ctx.trace_sink()->hit(OpKind::bool_op);
    return ctx.plain_sub_from_scalar(1, a);
}

}  // namespace nshedb
