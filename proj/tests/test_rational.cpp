#include "doctest.h"
#include "qsym/rational.hpp"

using namespace qsym;

TEST_CASE("rational normalization and arithmetic") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-1, -2) == Rat(1, 2));
    CHECK(Rat(3, -6) == Rat(-1, 2));
    CHECK((Rat(1, 2) + Rat(1, 3)) == Rat(5, 6));
    CHECK((Rat(1, 2) - Rat(1, 2)).is_zero());
    CHECK((Rat(1, 2) * Rat(2, 3)) == Rat(1, 3));
    CHECK_THROWS(Rat(1, 0));
}

TEST_CASE("mod1 representative") {
    CHECK(Rat(3, 2).mod1() == Rat(1, 2));
    CHECK(Rat(-1, 4).mod1() == Rat(3, 4));
    CHECK(Rat(-7, 3).mod1() == Rat(2, 3));
    CHECK(Rat(4, 2).mod1().is_zero());
}

TEST_CASE("string round trip") {
    CHECK(Rat::parse("3/4") == Rat(3, 4));
    CHECK(Rat::parse("-1/2") == Rat(-1, 2));
    CHECK(Rat::parse("5") == Rat(5, 1));
    CHECK(Rat(7, 9).str() == "7/9");
}

TEST_CASE("rounding to bounded denominator") {
    double residual = 0;
    CHECK(round_to_denominator(0.49999999, 2, &residual) == Rat(1, 2));
    CHECK(residual < 1e-7);
    CHECK(round_to_denominator(0.9999999999, 4, &residual).is_zero());
    CHECK(residual < 1e-9);
    CHECK(round_to_denominator(0.3333333333, 3, &residual) == Rat(1, 3));
}
