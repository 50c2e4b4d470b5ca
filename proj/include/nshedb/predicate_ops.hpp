#pragma once

#include <cstdint>
#include <vector>

#include "nshedb/he_vector.hpp"

namespace nshedb {

/// A predicate output: every meaningful slot holds an encryption of 0 or 1.
using MaskVector = HEVector;

// Depth increments of the comparison operators (the planner's cost model
// uses the same functions, so model and executor agree by construction).
Rational eq_depth_increment(std::uint64_t p);
Rational cmp_depth_increment(std::uint64_t p);                    // lt/gt/leq/geq
Rational in_depth_increment(std::uint64_t p, std::uint64_t k);    // |S| = k
Rational between_depth_increment(std::uint64_t p, std::int64_t lo, std::int64_t hi);

/// x^e with depth exactly ceil(log2(e)): recursive halving with shared
/// sub-exponents (pure squarings when e is a power of two).
HEVector pow_fermat(const HeContext& ctx, const HEVector& x, std::uint64_t e);

/// Balanced (divide-and-conquer) addition; depth ceil(log2(k))/p over the max input.
HEVector balanced_add(const HeContext& ctx, std::vector<HEVector> terms);

std::uint64_t encode_signed(std::int64_t v, std::uint64_t p);
std::int64_t decode_signed(std::uint64_t r, std::uint64_t p);

// Equality via Fermat's Little Theorem: 1 - (x-y)^(p-1).
// Depth increase is exactly ceil(log2(p-1)).
MaskVector eq(const HeContext& ctx, const HEVector& x, const HEVector& y);
MaskVector eq_plain(const HeContext& ctx, const HEVector& x, std::uint64_t value);

// Signed range comparisons: sum of shifted Fermat terms over the negative
// range. Defined when both operands' true values differ by at most (p-1)/2.
MaskVector lt(const HeContext& ctx, const HEVector& x, const HEVector& y);
MaskVector gt(const HeContext& ctx, const HEVector& x, const HEVector& y);
MaskVector leq(const HeContext& ctx, const HEVector& x, const HEVector& y);
MaskVector geq(const HeContext& ctx, const HEVector& x, const HEVector& y);
MaskVector lt_plain(const HeContext& ctx, const HEVector& x, std::int64_t value);
MaskVector gt_plain(const HeContext& ctx, const HEVector& x, std::int64_t value);
MaskVector leq_plain(const HeContext& ctx, const HEVector& x, std::int64_t value);
MaskVector geq_plain(const HeContext& ctx, const HEVector& x, std::int64_t value);

/// Set membership: sum of equality masks over a public, non-empty set.
MaskVector in_set(const HeContext& ctx, const HEVector& x, const std::vector<std::uint64_t>& set);

/// Range predicate over public signed bounds. Small ranges run as membership
/// over the k = hi-lo+1 values (Between/In depth row); wide ranges as the
/// product geq(x,lo) * leq(x,hi).
MaskVector between(const HeContext& ctx, const HEVector& x, std::int64_t lo, std::int64_t hi);
/// Product form with per-slot encrypted bounds.
MaskVector between_vec(const HeContext& ctx, const HEVector& x, const HEVector& lo, const HEVector& hi);

// AND = ab, OR = a+b-ab, NOT = 1-a. AND/OR add depth 1, NOT adds 0.
MaskVector bool_and(const HeContext& ctx, const MaskVector& a, const MaskVector& b);
MaskVector bool_or(const HeContext& ctx, const MaskVector& a, const MaskVector& b);
MaskVector bool_not(const HeContext& ctx, const MaskVector& a);

}  // namespace nshedb
