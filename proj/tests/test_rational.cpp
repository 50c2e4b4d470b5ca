#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nshedb/rational.hpp"

using nshedb::Rational;

TEST_CASE("arithmetic and normalization") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(13, 257) + Rational(1, 257) == Rational(14, 257));
    CHECK(Rational(8) + Rational(13, 257) == Rational(8 * 257 + 13, 257));
    CHECK(Rational(-1, -2) == Rational(1, 2));
}

TEST_CASE("ordering") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(12) >= Rational(12));
    CHECK(Rational(26 * 257 + 13, 257) > Rational(26));
    CHECK(nshedb::max(Rational(3, 7), Rational(2, 7)) == Rational(3, 7));
}

TEST_CASE("mixed-form rendering") {
    CHECK(Rational(9).str() == "9");
    CHECK(Rational(13, 257).str() == "13/257");
    CHECK((Rational(10) + Rational(13, 257)).str() == "10+13/257");
}
