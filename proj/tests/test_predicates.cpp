#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nshedb/errors.hpp"
#include "nshedb/predicate_ops.hpp"
#include "nshedb/sim_backend.hpp"

using namespace nshedb;

namespace {

Params sim_params(std::uint64_t n, std::uint64_t p, Rational budget = Rational(64)) {
    return make_params(n, p, 64, budget);
}

HEVector pack(const SimContext& ctx, const std::vector<std::uint64_t>& vals) {
    std::vector<std::uint64_t> slots(ctx.params().n, 0);
    std::copy(vals.begin(), vals.end(), slots.begin());
    return ctx.from_plain(PlainVector(slots, ctx.params()));
}

}  // namespace

TEST_CASE("Fermat sanity: (x-y)^(p-1) == 1 for all x != y, p=17") {
    auto params = sim_params(512, 17);
    SimContext ctx(params);
    std::vector<std::uint64_t> xs, ys;
    for (std::uint64_t a = 0; a < 17; ++a)
        for (std::uint64_t b = 0; b < 17; ++b) {
            xs.push_back(a);
            ys.push_back(b);
        }
    HEVector diff = ctx.sub(pack(ctx, xs), pack(ctx, ys));
    auto powed = ctx.payload(pow_fermat(ctx, diff, 16));
    for (std::size_t i = 0; i < xs.size(); ++i) REQUIRE(powed[i] == (xs[i] == ys[i] ? 0 : 1));
}

TEST_CASE("eq: exhaustive truth table at p=17, both operand kinds") {
    auto params = sim_params(512, 17);
    SimContext ctx(params);
    std::vector<std::uint64_t> xs, ys;
    for (std::uint64_t a = 0; a < 17; ++a)
        for (std::uint64_t b = 0; b < 17; ++b) {
            xs.push_back(a);
            ys.push_back(b);
        }
    HEVector x = pack(ctx, xs), y = pack(ctx, ys);

    auto mask = ctx.payload(eq(ctx, x, y));
    for (std::size_t i = 0; i < xs.size(); ++i) REQUIRE(mask[i] == (xs[i] == ys[i] ? 1 : 0));

    // equal inputs give the all-ones mask
    auto ones = ctx.payload(eq(ctx, x, x));
    for (std::size_t i = 0; i < params.n; ++i) REQUIRE(ones[i] == 1);

    // plain-constant comparisons agree
    for (std::uint64_t c = 0; c < 17; ++c) {
        auto m = ctx.payload(eq_plain(ctx, x, c));
        for (std::size_t i = 0; i < xs.size(); ++i) REQUIRE(m[i] == (xs[i] == c ? 1 : 0));
    }
}

TEST_CASE("eq depth contract is exact") {
    for (std::uint64_t p : {17ull, 257ull}) {
        auto params = sim_params(16, p);
        SimContext ctx(params);
        HEVector x = ctx.from_scalar(3), y = ctx.from_scalar(5);
        CHECK(depth_of(eq(ctx, x, y)) == eq_depth_increment(p));
        CHECK(depth_of(eq_plain(ctx, x, 4)) == eq_depth_increment(p));
        // from elevated inputs the increase is still exact
        HEVector deep = ctx.mul(x, x);
        CHECK(depth_of(eq(ctx, deep, y)) == Rational(1) + eq_depth_increment(p));
    }
    // p = 65537: equality costs exactly 16 multiplicative levels
    auto params = sim_params(8, 65537);
    SimContext ctx(params);
    HEVector x = ctx.from_scalar(1234), y = ctx.from_scalar(77);
    HEVector m = eq(ctx, x, y);
    CHECK(depth_of(m) == Rational(16));
    CHECK(ctx.payload(m)[0] == 0);
    CHECK(eq_depth_increment(65537) == Rational(16));
}

TEST_CASE("lt: paper walk-through 3 < 5 and 5 < 3") {
    auto params = sim_params(16, 17);
    SimContext ctx(params);
    HEVector three = ctx.from_scalar(3), five = ctx.from_scalar(5);
    CHECK(ctx.payload(lt(ctx, three, five))[0] == 1);  // 3-5 = -2, negative range
    CHECK(ctx.payload(lt(ctx, five, three))[0] == 0);  // 5-3 = 2, positive range
}

TEST_CASE("lt/gt/leq/geq: exhaustive over the valid window, p=17") {
    // Range comparisons are defined for |x-y| <= (p-1)/2; enumerate every
    // signed pair in [-8,8]^2 inside that window.
    auto params = sim_params(512, 17);
    SimContext ctx(params);
    std::vector<std::int64_t> xs, ys;
    for (std::int64_t a = -8; a <= 8; ++a)
        for (std::int64_t b = -8; b <= 8; ++b) {
            if (std::abs(a - b) > 8) continue;
            xs.push_back(a);
            ys.push_back(b);
        }
    std::vector<std::uint64_t> xe, ye;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xe.push_back(encode_signed(xs[i], 17));
        ye.push_back(encode_signed(ys[i], 17));
    }
    HEVector x = pack(ctx, xe), y = pack(ctx, ye);
    auto mlt = ctx.payload(lt(ctx, x, y));
    auto mgt = ctx.payload(gt(ctx, x, y));
    auto mle = ctx.payload(leq(ctx, x, y));
    auto mge = ctx.payload(geq(ctx, x, y));
    auto meq = ctx.payload(eq(ctx, x, y));
    for (std::size_t i = 0; i < xs.size(); ++i) {
        REQUIRE(mlt[i] == (xs[i] < ys[i] ? 1 : 0));
        REQUIRE(mgt[i] == (xs[i] > ys[i] ? 1 : 0));
        REQUIRE(mle[i] == (xs[i] <= ys[i] ? 1 : 0));
        REQUIRE(mge[i] == (xs[i] >= ys[i] ? 1 : 0));
        // consistent total order: exactly one of lt, eq, gt fires
        REQUIRE(mlt[i] + meq[i] + mgt[i] == 1);
    }
}

TEST_CASE("lt depth contract is exact") {
    for (std::uint64_t p : {17ull, 257ull}) {
        auto params = sim_params(16, p);
        SimContext ctx(params);
        HEVector x = ctx.from_scalar(3), y = ctx.from_scalar(5);
        Rational want = cmp_depth_increment(p);
        CHECK(depth_of(lt(ctx, x, y)) == want);
        CHECK(depth_of(leq_plain(ctx, x, 4)) == want);
        CHECK(want == eq_depth_increment(p) +
                          Rational(ceil_log2_u64((p - 1) / 2), static_cast<std::int64_t>(p)));
    }
}

TEST_CASE("in_set: membership indicator, p=17") {
    auto params = sim_params(32, 17);
    SimContext ctx(params);
    std::vector<std::uint64_t> xs(17);
    for (std::uint64_t a = 0; a < 17; ++a) xs[a] = a;
    HEVector x = pack(ctx, xs);

    std::vector<std::uint64_t> set = {2, 5, 11};
    auto m = ctx.payload(in_set(ctx, x, set));
    for (std::uint64_t a = 0; a < 17; ++a)
        REQUIRE(m[a] == ((a == 2 || a == 5 || a == 11) ? 1 : 0));

    // x in {x} is the all-ones mask over the packed values
    auto self = ctx.payload(in_set(ctx, ctx.from_scalar(7), {7}));
    CHECK(self[0] == 1);

    CHECK_THROWS_AS(in_set(ctx, x, {}), Error);
}

TEST_CASE("in_set depth: singleton reduces to eq; k terms add log2(k)/p") {
    auto params = sim_params(16, 257);
    SimContext ctx(params);
    HEVector x = ctx.from_scalar(9);
    CHECK(depth_of(in_set(ctx, x, {4})) == depth_of(eq_plain(ctx, x, 4)));
    CHECK(depth_of(in_set(ctx, x, {1, 2, 3})) == Rational(8) + Rational(2, 257));
    CHECK(in_depth_increment(257, 3) == Rational(8) + Rational(2, 257));
}

TEST_CASE("between: exhaustive triples within the window, p=17") {
    auto params = sim_params(8192, 17);
    SimContext ctx(params);
    // product form with encrypted bounds
    std::vector<std::int64_t> xs, los, his;
    for (std::int64_t v = -8; v <= 8; ++v)
        for (std::int64_t lo = -8; lo <= 8; ++lo)
            for (std::int64_t hi = lo; hi <= 8; ++hi) {
                if (std::abs(v - lo) > 8 || std::abs(v - hi) > 8) continue;
                xs.push_back(v);
                los.push_back(lo);
                his.push_back(hi);
            }
    REQUIRE(xs.size() <= params.n);
    std::vector<std::uint64_t> xe, le, he;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xe.push_back(encode_signed(xs[i], 17));
        le.push_back(encode_signed(los[i], 17));
        he.push_back(encode_signed(his[i], 17));
    }
    HEVector x = pack(ctx, xe);
    auto m = ctx.payload(between_vec(ctx, x, pack(ctx, le), pack(ctx, he)));
    for (std::size_t i = 0; i < xs.size(); ++i)
        REQUIRE(m[i] == ((los[i] <= xs[i] && xs[i] <= his[i]) ? 1 : 0));

    // scalar-bound form (set-membership path) over every in-window range
    std::vector<std::uint64_t> all(17);
    for (std::uint64_t a = 0; a < 17; ++a) all[a] = a;
    HEVector xv = pack(ctx, all);
    for (std::int64_t lo = -8; lo <= 8; ++lo)
        for (std::int64_t hi = lo; hi <= lo + 4 && hi <= 8; ++hi) {
            auto got = ctx.payload(between(ctx, xv, lo, hi));
            for (std::uint64_t a = 0; a < 17; ++a) {
                std::int64_t v = decode_signed(a, 17);
                if (std::abs(v - lo) > 8 || std::abs(v - hi) > 8) continue;
                REQUIRE(got[a] == ((lo <= v && v <= hi) ? 1 : 0));
            }
        }

    // between(x, x, x) accepts exactly x
    HEVector seven = ctx.from_scalar(7);
    CHECK(ctx.payload(between_vec(ctx, seven, seven, seven))[0] == 1);
}

TEST_CASE("between depth: range form matches the Between/In row, product form lt+1") {
    auto params = sim_params(16, 257);
    SimContext ctx(params);
    HEVector x = ctx.from_scalar(5);
    CHECK(depth_of(between(ctx, x, 1, 3)) == Rational(8) + Rational(2, 257));  // k=3
    CHECK(between_depth_increment(257, 1, 3) == Rational(8) + Rational(2, 257));
    // a window wider than (p-1)/2 forces the two-comparison product
    HEVector lo = ctx.from_scalar(encode_signed(-100, 257));
    HEVector hi = ctx.from_scalar(100);
    CHECK(depth_of(between_vec(ctx, x, lo, hi)) == cmp_depth_increment(257) + Rational(1));
    CHECK(between_depth_increment(257, -100, 100) == cmp_depth_increment(257) + Rational(1));
}

TEST_CASE("boolean operators: truth tables, De Morgan, involution") {
    auto params = sim_params(8, 17);
    SimContext ctx(params);
    HEVector a = ctx.from_plain(PlainVector({0, 0, 1, 1, 0, 0, 1, 1}, params));
    HEVector b = ctx.from_plain(PlainVector({0, 1, 0, 1, 0, 1, 0, 1}, params));

    CHECK(ctx.payload(bool_and(ctx, a, b)) == std::vector<std::uint64_t>{0, 0, 0, 1, 0, 0, 0, 1});
    CHECK(ctx.payload(bool_or(ctx, a, b)) == std::vector<std::uint64_t>{0, 1, 1, 1, 0, 1, 1, 1});
    CHECK(ctx.payload(bool_not(ctx, a)) == std::vector<std::uint64_t>{1, 1, 0, 0, 1, 1, 0, 0});
    CHECK(ctx.payload(bool_not(ctx, bool_not(ctx, a))) == ctx.payload(a));

    CHECK(depth_of(bool_and(ctx, a, b)) == Rational(1));
    CHECK(depth_of(bool_or(ctx, a, b)) == Rational(1));
    CHECK(depth_of(bool_not(ctx, a)) == Rational(0));

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::uint64_t> av(8), bv(8);
        for (auto& v : av) v = rng() % 2;
        for (auto& v : bv) v = rng() % 2;
        HEVector x = ctx.from_plain(PlainVector(av, params));
        HEVector y = ctx.from_plain(PlainVector(bv, params));
        CHECK(ctx.payload(bool_not(ctx, bool_and(ctx, x, y))) ==
              ctx.payload(bool_or(ctx, bool_not(ctx, x), bool_not(ctx, y))));
    }
}

TEST_CASE("mask closure: predicate outputs are 0/1 slot-wise") {
    auto params = sim_params(512, 17);
    SimContext ctx(params);
    std::vector<std::uint64_t> xs, ys;
    for (std::uint64_t a = 0; a < 17; ++a)
        for (std::uint64_t b = 0; b < 17; ++b) {
            xs.push_back(a);
            ys.push_back(b);
        }
    HEVector x = pack(ctx, xs), y = pack(ctx, ys);
    for (auto& mask : {eq(ctx, x, y), lt(ctx, x, y), geq(ctx, x, y), in_set(ctx, x, {1, 4, 9})}) {
        auto m = ctx.payload(mask);
        for (std::size_t i = 0; i < xs.size(); ++i) REQUIRE((m[i] == 0 || m[i] == 1));
    }
    // masks compose under he_mul staying in {0,1}
    auto composed = ctx.payload(bool_and(ctx, eq(ctx, x, y), lt(ctx, y, x)));
    for (auto v : composed) REQUIRE(v == 0);  // eq and lt are disjoint
}

TEST_CASE("comparisons respect the depth budget") {
    auto params = sim_params(16, 257, Rational(6));
    SimContext ctx(params);
    HEVector x = ctx.from_scalar(3);
    CHECK_THROWS_AS(eq_plain(ctx, x, 5), DepthBudgetExceeded);  // needs 8 > 6
}
