// Copyright 2026 The lattice-orbits authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "doctest.h"

#include "core/errors.hpp"
#include "core/number_value.hpp"

using namespace latorb;

namespace {
NumberValue phi() { return NumberValue(QuadraticSurd(-1, 1, 2, 5)); }
NumberValue rat(long n, long d) { return NumberValue::rational(n, d); }
}  // namespace

TEST_CASE("surd normalization and identities") {
  QuadraticSurd x(-2, 2, 4, 5);  // (-2 + 2 sqrt5)/4 = (-1 + sqrt5)/2
  CHECK(x.a() == -1);
  CHECK(x.b() == 1);
  CHECK(x.c() == 2);

  // phi^2 = 1 - phi and 1/phi = phi + 1.
  NumberValue p = phi();
  CHECK(p * p == NumberValue(1) - p);
  CHECK(p.inverse() == p + NumberValue(1));

  // sqrt(1) folds into the rational part.
  QuadraticSurd folded(1, 3, 2, 1);
  CHECK(folded.is_rational());
  CHECK(folded.to_rational() == mpq_class(2));
}

TEST_CASE("surd floor and comparisons are exact") {
  QuadraticSurd sqrt2(0, 1, 1, 2);
  CHECK(sqrt2.floor() == 1);
  CHECK((-sqrt2).floor() == -2);
  QuadraticSurd golden(1, 1, 2, 5);  // (1 + sqrt5)/2
  CHECK(golden.floor() == 1);
  CHECK(golden.cmp(mpq_class(8, 5)) > 0);
  CHECK(golden.cmp(mpq_class(13, 8)) < 0);
  // Fibonacci ratios straddle the golden ratio with alternating signs.
  CHECK(golden.cmp(mpq_class(1597, 987)) < 0);
  CHECK(golden.cmp(mpq_class(2584, 1597)) > 0);
}

TEST_CASE("square-free validation") {
  CHECK(looks_square_free(mpz_class(2)));
  CHECK(looks_square_free(mpz_class(5)));
  CHECK(looks_square_free(mpz_class(30)));
  CHECK(!looks_square_free(mpz_class(4)));
  CHECK(!looks_square_free(mpz_class(12)));
  CHECK(!looks_square_free(mpz_class(49)));
  CHECK_THROWS_AS(QuadraticSurd(0, 1, 1, 8), Error);
}

TEST_CASE("mixed radicands are rejected, rationals lift") {
  NumberValue a(QuadraticSurd(0, 1, 1, 2));
  NumberValue b(QuadraticSurd(0, 1, 1, 5));
  CHECK_THROWS_AS(a + b, Error);
  CHECK_THROWS_AS(a * b, Error);
  // Rational op surd stays exact in the surd's field.
  NumberValue c = rat(1, 2) + a;
  CHECK(c.kind() == NumberValue::Kind::surd);
  CHECK(c - a == rat(1, 2));
}

TEST_CASE("surd arithmetic demotes rational results") {
  NumberValue s2(QuadraticSurd(0, 1, 1, 2));
  NumberValue prod = s2 * s2;
  CHECK(prod.kind() == NumberValue::Kind::rational);
  CHECK(prod == NumberValue(2));
  NumberValue diff = s2 - s2;
  CHECK(diff.kind() == NumberValue::Kind::rational);
  CHECK(diff.is_zero());
}

TEST_CASE("promotion rules: floats absorb") {
  NumberValue f(BigFloat::from_double(0.5));
  NumberValue r = rat(1, 3);
  NumberValue sum = f + r;
  CHECK(sum.kind() == NumberValue::Kind::bigfloat);
  CHECK(sum.to_bigfloat().close_to(BigFloat::from_mpq(mpq_class(5, 6)), 1e-70));
  CHECK_THROWS_AS(sum.floor_exact(), Error);
}

TEST_CASE("division by zero") {
  CHECK_THROWS_AS(rat(1, 2) / rat(0, 1), Error);
  CHECK_THROWS_AS(phi().inverse() / (phi() - phi()), Error);
}

TEST_CASE("floor and frac on exact values") {
  CHECK(rat(7, 3).floor_exact() == 2);
  CHECK(rat(-7, 3).floor_exact() == -3);
  CHECK(rat(7, 3).frac_exact() == rat(1, 3));
  CHECK(phi().floor_exact() == 0);
  CHECK((phi() + NumberValue(3)).floor_exact() == 3);
}

TEST_CASE("number literals") {
  CHECK(NumberValue::parse("phi") == phi());
  CHECK(NumberValue::parse("sqrt2m1") == NumberValue(QuadraticSurd(-1, 1, 1, 2)));
  CHECK(NumberValue::parse("rational:2/5") == rat(2, 5));
  CHECK(NumberValue::parse("2/5") == rat(2, 5));
  CHECK(NumberValue::parse("sqrt5:-1:2") == phi());       // b defaults to 1
  CHECK(NumberValue::parse("sqrt5:-1:1:2") == phi());
  CHECK(NumberValue::parse("surd:sqrt5:-1:2") == phi());
  CHECK(NumberValue::parse("float:0.25").kind() == NumberValue::Kind::bigfloat);
  CHECK_THROWS_AS(NumberValue::parse("rational:1/0"), Error);
}

TEST_CASE("JSON round trips are bit-exact for exact kinds") {
  for (const NumberValue& v :
       {rat(-22, 7), phi(), NumberValue(QuadraticSurd(3, -2, 7, 3))}) {
    NumberValue back = NumberValue::from_json(v.to_json());
    CHECK(back == v);
    CHECK(back.kind() == v.kind());
  }
  // Float arm: hex form identifies the binary value exactly.
  BigFloat f = BigFloat::from_double(1.0).exp();
  NumberValue v(f);
  NumberValue back = NumberValue::from_json(v.to_json());
  CHECK(back.as_bigfloat().cmp(f) == 0);
}

TEST_CASE("BigFloat error tracking") {
  BigFloat one = BigFloat::from_long(1);
  CHECK(one.err() == 0.0);
  BigFloat third = one / BigFloat::from_long(3);
  CHECK(third.err() > 0.0);
  CHECK(third.err() < 1e-70);
  // Integer arithmetic stays exact.
  BigFloat four = BigFloat::from_long(2) * BigFloat::from_long(2);
  CHECK(four.err() == 0.0);
  CHECK(four.cmp(BigFloat::from_long(4)) == 0);
  // exp/log sanity at 256 bits.
  BigFloat e = one.exp();
  CHECK(e.log().close_to(one, 1e-70));
}

TEST_CASE("BigFloat precision control") {
  unsigned before = default_precision();
  set_default_precision(128);
  CHECK(BigFloat().prec() == 128);
  set_default_precision(before);
  CHECK_THROWS_AS(set_default_precision(4), Error);
}
