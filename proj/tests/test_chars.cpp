#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "finite_hgf/chars.hpp"
#include "finite_hgf/error.hpp"

using namespace finite_hgf;

TEST_CASE("multiplicative character values") {
  const auto k = FiniteField::from_order(5);
  const MultChar eps = MultChar::trivial(*k);
  for (std::uint32_t x = 1; x < 5; ++x) CHECK(eval_mult(eps, FieldElem{x}) == CycloNum(1));
  CHECK(eval_mult(eps, k->zero()).is_zero());
  CHECK(eval_mult(quadratic_char(*k), FieldElem{4}) == CycloNum(1));
  for (std::int64_t j = -3; j < 9; ++j) CHECK(eval_mult(MultChar(*k, j), k->one()) == CycloNum(1));
}

TEST_CASE("additive character values") {
  const auto k3 = FiniteField::from_order(3);
  const auto psi = AddChar::standard(*k3);
  CHECK(eval_add(psi, k3->zero()) == CycloNum(1));
  CHECK(eval_add(psi, FieldElem{1}) == CycloNum::root_of_unity(3, 1));
  const auto k9 = FiniteField::from_order(9);
  for (std::uint32_t a = 1; a < 9; ++a) {
    const AddChar psi_a(*k9, FieldElem{a});
    for (auto x : k9->elements()) {
      CHECK(eval_add(psi_a, x) * eval_add(psi_a, k9->neg(x)) == CycloNum(1));
      for (auto y : {FieldElem{2}, FieldElem{7}}) {
        CHECK(eval_add(psi_a, k9->add(x, y)) == eval_add(psi_a, x) * eval_add(psi_a, y));
      }
    }
  }
  CHECK_THROWS_AS(AddChar(*k9, k9->zero()), Error);
}

TEST_CASE("delta and orders") {
  const auto k = FiniteField::from_order(5);
  CHECK(delta_char(MultChar::trivial(*k)) == 1);
  CHECK(delta_char(quadratic_char(*k)) == 0);
  CHECK(delta_char(MultChar(*k, 4)) == 1);
  const auto k13 = FiniteField::from_order(13);
  for (std::uint32_t j = 0; j < 12; ++j) {
    const MultChar chi(*k13, j);
    CHECK(chi.order() == 12 / std::gcd(j, 12u));
    CHECK(chi.pow(chi.order()).is_trivial());
    CHECK((chi * chi.conj()).is_trivial());
  }
}

TEST_CASE("quadratic and cubic characters") {
  CHECK(quadratic_char(*FiniteField::from_order(5)).index() == 2);
  const auto cubic = cubic_chars(*FiniteField::from_order(7));
  REQUIRE(cubic.size() == 2);
  CHECK(cubic[0].index() == 2);
  CHECK(cubic[1].index() == 4);
  try {
    quadratic_char(*FiniteField::from_order(4));
    FAIL("quadratic character in characteristic 2");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoSuchCharacter);
  }
  CHECK_THROWS_AS(cubic_chars(*FiniteField::from_order(5)), Error);
}

TEST_CASE("n-th root characters") {
  CHECK(nth_root_chars(*FiniteField::from_order(7), 3).size() == 3);
  const auto two = nth_root_chars(*FiniteField::from_order(5), 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].index() == 0);
  CHECK(two[1].index() == 2);
  CHECK(nth_root_chars(*FiniteField::from_order(8), 7).size() == 7);
}

TEST_CASE("orthogonality") {
  for (std::uint32_t q : {3u, 4u, 5u, 7u, 8u, 9u}) {
    const auto k = FiniteField::from_order(q);
    for (std::uint32_t j = 0; j < k->units_order(); ++j) {
      const MultChar chi(*k, j);
      CycloNum s = CycloNum::zero(k->units_order());
      for (auto x : k->units()) s += eval_mult(chi, x);
      CHECK(s == CycloNum(long(k->units_order()) * delta_char(chi)));
    }
    for (auto a : k->units()) {
      CycloNum s = CycloNum::zero(k->p());
      for (auto x : k->elements()) s += eval_add(AddChar(*k, a), x);
      CHECK(s.is_zero());
    }
  }
}

TEST_CASE("parameter sets") {
  const auto k = FiniteField::from_order(7);
  const MultChar eps = MultChar::trivial(*k);
  const ParamSet ee(*k, std::vector<MultChar>{eps, eps});
  const ParamSet e(*k, std::vector<MultChar>{eps});
  CHECK(pairing(ee, e) == 2);
  CHECK(ee.degree() == 2);
  const ParamSet ab(*k, std::vector<std::uint32_t>{1, 2});
  const ParamSet c(*k, std::vector<std::uint32_t>{3});
  CHECK(pairing(ab, c) == 0);
  for (std::uint32_t j = 0; j < 6; ++j) {
    const MultChar chi(*k, j);
    const ParamSet a(*k, std::vector<std::uint32_t>{1, 1, 4, 5});
    CHECK(a.shift(chi).conj() == a.conj().shift(chi.conj()));
    CHECK(a.shift(chi).degree() == 4);
  }
  const ParamSet a(*k, std::vector<std::uint32_t>{1, 1, 3});
  const ParamSet b(*k, std::vector<std::uint32_t>{1, 3, 3, 5});
  CHECK(pairing(a, b) == pairing(b, a));
  CHECK(pairing(a, b) == 2 + 2);
  CHECK(pairing(a, b + c) == pairing(a, b) + pairing(a, c));
  CHECK((a + b).degree() == 7);

  const auto other = FiniteField::from_order(5);
  try {
    (void)(a + ParamSet(*other, std::vector<std::uint32_t>{1}));
    FAIL("mixed fields accepted");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::FieldMismatch);
  }
}

TEST_CASE("character syntax") {
  const auto k = FiniteField::from_order(7);
  CHECK(parse_char(*k, "chi:2").index() == 2);
  CHECK(parse_char(*k, "chi:-1").index() == 5);
  CHECK(parse_char(*k, "chi:8").index() == 2);
  CHECK(parse_char(*k, "eps").is_trivial());
  CHECK(parse_char(*k, "phi").index() == 3);
  CHECK(parse_char(*k, "rho").index() == 2);
  CHECK(parse_char(*k, "4").index() == 4);
  const auto set = parse_paramset(*k, "chi:1,chi:1,phi");
  CHECK(set.degree() == 3);
  CHECK(set.to_string() == "chi:1,chi:1,chi:3");
  CHECK(parse_paramset(*k, "").degree() == 0);
  CHECK(to_string(MultChar(*k, 5)) == "chi:5");

  try {
    parse_paramset(*k, "chi:1,chi:x");
    FAIL("malformed index accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("position 6") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_char(*FiniteField::from_order(4), "phi"), Error);
  CHECK_THROWS_AS(parse_char(*FiniteField::from_order(5), "rho"), Error);
  CHECK_THROWS_AS(parse_paramset(*k, "chi:1,"), Error);
}
