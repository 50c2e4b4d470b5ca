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

std::vector<std::uint64_t> random_slots(std::mt19937_64& rng, std::uint64_t n, std::uint64_t p) {
    std::vector<std::uint64_t> v(n);
    for (auto& x : v) x = rng() % p;
    return v;
}

}  // namespace

TEST_CASE("params validation") {
    CHECK_THROWS_AS(make_params(100, 257, 64, Rational(4)), InvalidParams);  // n not a power of two
    CHECK_THROWS_AS(make_params(64, 256, 64, Rational(4)), InvalidParams);   // p not prime
    CHECK_THROWS_AS(make_params(64, 257, 64, Rational(0)), InvalidParams);   // empty budget
    CHECK(params_profile("paper").n == 32768);
    CHECK(params_profile("paper").q_bits == 881);
    CHECK(params_profile("paper").p == 65537);
    CHECK(params_profile("desk").p == 257);
    CHECK(params_profile("desk").batching_compatible());
}

TEST_CASE("additive identity and small sums") {
    auto params = sim_params(8, 17);
    SimContext ctx(params);
    HEVector x = ctx.from_plain(PlainVector({1, 2, 3, 4, 5, 6, 7, 8}, params));
    HEVector z = ctx.from_scalar(0);
    HEVector s = ctx.add(x, z);
    CHECK(ctx.payload(s) == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 7, 8});
    CHECK(s.depth() == Rational(1, 17));

    HEVector a = ctx.from_scalar(3);
    HEVector b = ctx.from_scalar(5);
    CHECK(ctx.payload(ctx.add(a, b))[0] == 8);
    CHECK(ctx.payload(ctx.mul(a, b))[0] == 15);
}

TEST_CASE("neg and self-subtraction") {
    auto params = sim_params(8, 17);
    SimContext ctx(params);
    HEVector x = ctx.from_plain(PlainVector({1, 0, 0, 0, 0, 0, 0, 0}, params));
    CHECK(ctx.payload(ctx.neg(x))[0] == 16);
    CHECK(ctx.neg(x).depth() == Rational(0));
    HEVector y = ctx.from_plain(PlainVector({3, 9, 11, 2, 0, 16, 5, 7}, params));
    auto diff = ctx.payload(ctx.sub(y, y));
    CHECK(diff == std::vector<std::uint64_t>(8, 0));
}

TEST_CASE("slot-wise oracle equivalence, 1000 trials") {
    std::mt19937_64 rng(42);
    for (std::uint64_t p : {17ull, 257ull}) {
        auto params = sim_params(64, p);
        SimContext ctx(params);
        for (int trial = 0; trial < 500; ++trial) {
            auto av = random_slots(rng, params.n, p);
            auto bv = random_slots(rng, params.n, p);
            auto mv = random_slots(rng, params.n, p);
            HEVector a = ctx.from_plain(PlainVector(av, params));
            HEVector b = ctx.from_plain(PlainVector(bv, params));

            auto add = ctx.payload(ctx.add(a, b));
            auto sub = ctx.payload(ctx.sub(a, b));
            auto mul = ctx.payload(ctx.mul(a, b));
            auto pm = ctx.payload(ctx.plain_mul(a, PlainVector(mv, params)));
            for (std::uint64_t i = 0; i < params.n; ++i) {
                REQUIRE(add[i] == (av[i] + bv[i]) % p);
                REQUIRE(sub[i] == (av[i] + p - bv[i]) % p);
                REQUIRE(mul[i] == av[i] * bv[i] % p);
                REQUIRE(pm[i] == av[i] * mv[i] % p);
            }
        }
    }
}

TEST_CASE("depth recurrence is exact") {
    auto params = sim_params(16, 257);
    SimContext ctx(params);
    std::mt19937_64 rng(1);
    HEVector x = ctx.from_plain(PlainVector(random_slots(rng, 16, 257), params));
    CHECK(x.fresh());
    CHECK(depth_of(x) == Rational(0));

    HEVector m = ctx.mul(x, x);
    CHECK(depth_of(m) == Rational(1));
    CHECK_FALSE(m.fresh());
    CHECK(depth_of(ctx.add(x, m)) == Rational(1) + Rational(1, 257));
    CHECK(depth_of(ctx.rotate(m, 3)) == Rational(1));
    CHECK(depth_of(ctx.plain_mul(m, PlainVector::constant(2, params))) == Rational(1));
    CHECK(depth_of(ctx.neg(m)) == Rational(1));

    // Association changes depth: (x*x)*(x*x) is depth 2, x*(x*(x*x)) is 3.
    HEVector balanced = ctx.mul(ctx.mul(x, x), ctx.mul(x, x));
    HEVector chain = ctx.mul(x, ctx.mul(x, ctx.mul(x, x)));
    CHECK(depth_of(balanced) == Rational(2));
    CHECK(depth_of(chain) == Rational(3));
}

TEST_CASE("depth budget is enforced on mul") {
    auto params = sim_params(8, 17, Rational(2));
    SimContext ctx(params);
    HEVector x = ctx.from_scalar(2);
    HEVector x2 = ctx.mul(x, x);
    HEVector x4 = ctx.mul(x2, x2);
    CHECK(depth_of(x4) == Rational(2));
    CHECK_THROWS_AS(ctx.mul(x4, x4), DepthBudgetExceeded);
}

TEST_CASE("rotation semantics and group structure") {
    auto params = sim_params(8, 17);
    SimContext ctx(params);
    HEVector x = ctx.from_plain(PlainVector({1, 2, 3, 4, 5, 6, 7, 8}, params));
    CHECK(ctx.payload(ctx.rotate(x, 0)) == ctx.payload(x));
    CHECK(ctx.payload(ctx.rotate(x, 4)) == std::vector<std::uint64_t>{5, 6, 7, 8, 1, 2, 3, 4});
    CHECK(ctx.payload(ctx.rotate(x, 8)) == ctx.payload(x));  // rotate(x, n) = x

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        auto v = random_slots(rng, 8, 17);
        std::uint64_t a = rng() % 8, b = rng() % 8;
        HEVector y = ctx.from_plain(PlainVector(v, params));
        CHECK(ctx.payload(ctx.rotate(ctx.rotate(y, a), b)) == ctx.payload(ctx.rotate(y, (a + b) % 8)));
    }
}

TEST_CASE("extract isolates one slot") {
    auto params = sim_params(8, 17);
    SimContext ctx(params);
    HEVector x = ctx.from_plain(PlainVector({9, 8, 7, 6, 5, 4, 3, 2}, params));
    CHECK(ctx.payload(ctx.extract(x, 1)) == std::vector<std::uint64_t>{0, 8, 0, 0, 0, 0, 0, 0});
    CHECK(ctx.extract(x, 1).depth() == Rational(0));
    HEVector z = ctx.from_scalar(0);
    CHECK(ctx.payload(ctx.extract(z, 3)) == std::vector<std::uint64_t>(8, 0));
    CHECK_THROWS_AS(ctx.extract(x, 8), IndexOutOfRange);

    std::mt19937_64 rng(9);
    auto v = random_slots(rng, 8, 17);
    HEVector y = ctx.from_plain(PlainVector(v, params));
    for (std::uint64_t i = 0; i < 8; ++i) {
        auto got = ctx.payload(ctx.extract(y, i));
        for (std::uint64_t s = 0; s < 8; ++s) CHECK(got[s] == (s == i ? v[i] : 0));
    }
}

TEST_CASE("broadcast replicates a slot, depth-free") {
    auto params = sim_params(8, 17);
    SimContext ctx(params);
    HEVector x = ctx.from_plain(PlainVector({5, 0, 0, 0, 0, 0, 0, 0}, params));
    CHECK(ctx.payload(ctx.broadcast(x, 0)) == std::vector<std::uint64_t>(8, 5));
    CHECK(ctx.broadcast(x, 0).depth() == Rational(0));
    HEVector c = ctx.from_scalar(11);
    CHECK(ctx.payload(ctx.broadcast(c, 5)) == std::vector<std::uint64_t>(8, 11));

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto v = random_slots(rng, 8, 17);
        HEVector y = ctx.from_plain(PlainVector(v, params));
        for (std::uint64_t i = 0; i < 8; ++i) {
            CHECK(ctx.payload(ctx.broadcast(y, i)) == std::vector<std::uint64_t>(8, v[i]));
            // broadcast(extract(x,i), i) replicates slot i of x
            CHECK(ctx.payload(ctx.broadcast(ctx.extract(y, i), i)) == std::vector<std::uint64_t>(8, v[i]));
        }
    }
}

TEST_CASE("exponentiation chain depth: x^(p-1) at p=17 is 4") {
    auto params = sim_params(8, 17);
    SimContext ctx(params);
    HEVector x = ctx.from_scalar(3);
    HEVector y = pow_fermat(ctx, x, 16);
    CHECK(depth_of(y) == Rational(4));
    CHECK(ctx.payload(y)[0] == 1);  // Fermat
}

TEST_CASE("backend and params mismatch is rejected") {
    auto p1 = sim_params(8, 17);
    auto p2 = sim_params(16, 17);
    SimContext c1(p1), c2(p2);
    HEVector a = c1.from_scalar(1);
    HEVector b = c2.from_scalar(1);
    CHECK_THROWS_AS(c1.add(a, b), BackendMismatch);
    CHECK_THROWS_AS(c2.mul(b, a), BackendMismatch);
}
