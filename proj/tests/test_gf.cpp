#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "finite_hgf/error.hpp"
#include "finite_hgf/gf.hpp"

using namespace finite_hgf;

namespace {

std::uint32_t naive_pow_code(const FiniteField& k, FieldElem x, unsigned e) {
  FieldElem r = k.one();
  for (unsigned i = 0; i < e; ++i) r = k.mul(r, x);
  return r.code;
}

}  // namespace

TEST_CASE("prime field GF(5) uses the smallest primitive root") {
  const auto k = FiniteField::construct(5, 1);
  CHECK(k->q() == 5);
  CHECK(k->generator().code == 2);
  CHECK(k->discrete_log(k->generator()) == 1);
  CHECK(k->discrete_log(k->one()) == 0);
  CHECK(k->discrete_log(FieldElem{4}) == 2);
}

TEST_CASE("GF(3) tables") {
  const auto k = FiniteField::construct(3, 1);
  CHECK(std::vector<std::uint32_t>(k->exp_table().begin(), k->exp_table().end()) == std::vector<std::uint32_t>{1, 2});
  for (std::uint32_t x = 0; x < 3; ++x) CHECK(k->trace(FieldElem{x}) == x);
  const auto elems = k->elements();
  REQUIRE(elems.size() == 3);
  CHECK(elems[0].code == 0);
  CHECK(elems[1].code == 1);
  CHECK(elems[2].code == 2);
}

TEST_CASE("GF(4) with x^2+x+1") {
  const auto k = FiniteField::construct(2, 2, std::vector<std::uint32_t>{1, 1, 1});
  CHECK(k->q() == 4);
  for (auto x : k->units()) CHECK(naive_pow_code(*k, x, 3) == 1);
  // omega = x has code 2, omega^2 = x + 1 has code 3.
  CHECK(k->trace(FieldElem{0}) == 0);
  CHECK(k->trace(FieldElem{1}) == 0);
  CHECK(k->trace(FieldElem{2}) == 1);
  CHECK(k->trace(FieldElem{3}) == 1);
  CHECK(k->elements().size() == 4);
  CHECK(k->units().size() == 3);
}

TEST_CASE("default moduli are the smallest irreducibles") {
  CHECK(FiniteField::construct(3, 2)->modulus() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(FiniteField::construct(2, 3)->modulus() == std::vector<std::uint32_t>{1, 0, 1, 1});
  CHECK(FiniteField::construct(2, 2)->modulus() == std::vector<std::uint32_t>{1, 1, 1});
}

TEST_CASE("GF(9) trace of one is f mod p") {
  const auto k = FiniteField::from_order(9);
  CHECK(k->p() == 3);
  CHECK(k->f() == 2);
  CHECK(k->trace(k->one()) == 2);
}

TEST_CASE("GF(7) units follow generator powers") {
  const auto k = FiniteField::construct(7, 1);
  const auto units = k->units();
  REQUIRE(units.size() == 6);
  CHECK(units[0].code == 1);
  for (std::size_t i = 1; i < units.size(); ++i) CHECK(units[i] == k->mul(units[i - 1], k->generator()));
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(FiniteField::construct(6, 1), Error);
  try {
    FiniteField::construct(6, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPrime);
  }
  try {
    FiniteField::construct(2, 2, std::vector<std::uint32_t>{1, 0, 1});
    FAIL("reducible modulus accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ReducibleModulus);
  }
  try {
    FiniteField::from_order(12);
    FAIL("q = 12 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidField);
  }
  try {
    FiniteField::construct(5, 1)->discrete_log(FieldElem{0});
    FAIL("log of zero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LogOfZero);
  }
}

TEST_CASE("table invariants over several fields") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u, 49u, 64u}) {
    CAPTURE(q);
    const auto k = FiniteField::from_order(q);
    const std::uint32_t n = k->units_order();
    for (std::uint32_t i = 0; i < n; ++i) {
      CHECK(k->discrete_log(k->exp(i)) == i);
      for (std::uint32_t j = 0; j < n; j += 3) CHECK(k->mul(k->exp(i), k->exp(j)) == k->exp(i + j));
    }
    std::vector<int> hits(k->p(), 0);
    for (auto x : k->elements()) {
      // Trace is the sum of Frobenius conjugates.
      FieldElem sum = k->zero(), frob = x;
      for (unsigned i = 0; i < k->f(); ++i) {
        sum = k->add(sum, frob);
        frob = k->pow(frob, k->p());
      }
      CHECK(sum.code == k->trace(x));
      ++hits[k->trace(x)];
      for (auto y : k->elements()) {
        if ((x.code * 7 + y.code) % 5 != 0) continue;
        CHECK(k->trace(k->add(x, y)) == (k->trace(x) + k->trace(y)) % k->p());
      }
    }
    for (int h : hits) CHECK(h > 0);
    for (std::uint32_t c = 0; c < k->p(); ++c) CHECK(k->pow(k->from_int(c), k->p()) == k->from_int(c));
  }
}

TEST_CASE("construction is deterministic") {
  const auto a = FiniteField::construct(3, 3);
  const auto b = FiniteField::construct(3, 3);
  CHECK(*a == *b);
  CHECK(a->generator() == b->generator());
  CHECK(std::equal(a->exp_table().begin(), a->exp_table().end(), b->exp_table().begin()));
  CHECK(std::equal(a->trace_table().begin(), a->trace_table().end(), b->trace_table().begin()));
}

TEST_CASE("field arithmetic") {
  const auto k = FiniteField::from_order(27);
  for (auto x : k->units()) {
    CHECK(k->mul(x, k->inv(x)) == k->one());
    CHECK(k->add(x, k->neg(x)) == k->zero());
    CHECK(k->div(x, x) == k->one());
  }
  CHECK(k->from_int(-1) == k->neg(k->one()));
  CHECK(k->from_coefficients(k->coefficients(FieldElem{17})) == FieldElem{17});
}

TEST_CASE("descriptor") {
  const auto d = FiniteField::from_order(9)->descriptor();
  CHECK(d["p"] == 3);
  CHECK(d["f"] == 2);
  CHECK(d["q"] == 9);
  CHECK(d["modulus"] == nlohmann::json::array({1, 0, 1}));
  CHECK(d.contains("generator"));
}

TEST_CASE("size cap") {
  CHECK_THROWS_AS(FiniteField::construct(2, 17), Error);
  CHECK_THROWS_AS(FiniteField::construct(65537, 1), Error);
}
