#include <doctest.h>

#include "../support.hpp"
#include "recaut/errors.hpp"
#include "recaut/sequences.hpp"

using namespace recaut;

namespace {

const LinRec kFib({0, 1}, {1, 1});
const LinRec kMod3({1, 0, 0}, {0, 0, 1});

Lra mod_k(std::size_t k) {
  std::vector<Rational> initials(k), coeffs(k);
  initials[0] = 1;
  coeffs[k - 1] = 1;
  return Lra{LinRec(initials, coeffs)};
}

}  // namespace

TEST_SUITE("sequences") {
  TEST_CASE("evaluation") {
    CHECK(lr_eval(kFib, 6) == 8);
    CHECK(lr_eval(kMod3, 3) == 1);
    CHECK(lr_eval(kMod3, 4) == 0);
    CHECK(lr_eval(LinRec({5}, {1}), 100) == 5);
    CHECK(lr_terms(kFib, 8) == std::vector<Rational>{0, 1, 1, 2, 3, 5, 8, 13});
    CHECK_THROWS(LinRec({1, 2}, {1}));
    CHECK_THROWS(LinRec({}, {}));
  }

  TEST_CASE("LRA words") {
    const Lra mod2 = mod_k(2);
    CHECK(lra_eval(mod2, "aa") == 1);
    CHECK(lra_eval(mod2, "a") == 0);
    CHECK(lra_eval(Lra{kFib}, "") == 0);
    CHECK_THROWS_AS(lra_eval(mod2, "ab"), AlphabetError);
  }

  TEST_CASE("MOD_k values") {
    for (std::size_t k = 1; k <= 8; ++k) {
      const auto terms = lr_terms(mod_k(k).rec, 101);
      for (std::size_t n = 0; n <= 100; ++n) CHECK(terms[n] == Rational(n % k == 0 ? 1 : 0));
    }
  }

  TEST_CASE("companion form") {
    const LinearForm form = companion_form(kFib);
    CHECK(form.values(10) == lr_terms(kFib, 10));
    CHECK(linrec_from_form(form).coeffs() == kFib.coeffs());
  }

  TEST_CASE("closures") {
    CHECK(lr_eval(lr_combine(CombineKind::Product, kFib, kFib), 6) == 64);
    CHECK(lr_eval(lr_combine(CombineKind::Sum, kFib, lr_constant(1)), 4) == 4);
    CHECK(lr_terms(lr_combine(CombineKind::Sum, kFib, lr_constant(0)), 20) == lr_terms(kFib, 20));
    CHECK(lr_eval(lr_constant(0), 9) == 0);
    CHECK(lr_eval(lr_constant(3), 7) == 3);
    CHECK(lr_eval(lr_constant(Rational(-1, 2)), 2) == Rational(-1, 2));

    testing::Rng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
      const LinRec u = testing::random_linrec(rng, 3, 3), v = testing::random_linrec(rng, 3, 3);
      const auto tu = lr_terms(u, 41), tv = lr_terms(v, 41);
      const auto sum = lr_terms(lr_combine(CombineKind::Sum, u, v), 41);
      const auto product = lr_terms(lr_combine(CombineKind::Product, u, v), 41);
      for (std::size_t n = 0; n <= 40; ++n) {
        CHECK(sum[n] == tu[n] + tv[n]);
        CHECK(product[n] == tu[n] * tv[n]);
      }
    }
  }

  TEST_CASE("reductions") {
    const LinRec a = lr_reduce(Reduction::SkolemToStrictPositivity, kFib);
    CHECK(lr_eval(a, 0) == 1);
    CHECK(lr_eval(a, 1) == 0);
    const LinRec b = lr_reduce(Reduction::SkolemToPositivity, lr_constant(0));
    for (const auto& x : lr_terms(b, 10)) CHECK(x == 0);
    const LinRec c = lr_reduce(Reduction::StrictPositivityToPositivity, kFib);
    CHECK(lr_eval(c, 3) == 5);
  }

  TEST_CASE("minimization") {
    const LinRec padded = lr_combine(CombineKind::Sum, kFib, lr_constant(0));
    const LinRec m = lr_minimize(padded);
    CHECK(m.depth() == 2);
    CHECK(lr_terms(m, 30) == lr_terms(kFib, 30));
    CHECK(lr_minimize(lr_combine(CombineKind::Sum, lr_constant(2), lr_constant(-2))).depth() == 1);

    testing::Rng rng(22);
    for (int trial = 0; trial < 30; ++trial) {
      const LinRec u = testing::random_linrec(rng, 4, 3);
      const LinRec w = lr_minimize(u);
      CHECK(w.depth() <= u.depth());
      CHECK(lr_terms(w, 40) == lr_terms(u, 40));
    }
  }

  TEST_CASE("tree recurrences") {
    const TreeLinRec t(1, {{"", Rational(1)}}, {2}, {3});
    CHECK(tlr_eval(t, "a") == 2);
    CHECK(tlr_eval(t, "ab") == 6);
    CHECK(tlr_eval(t, "") == 1);
    const TreeLinRec t2(2, {{"", 1}, {"a", 2}, {"b", 3}}, {1, 1}, {0, 1});
    CHECK(tlr_eval(t2, "b") == 3);
    CHECK(tlr_eval(t2, "ba") == 3 + 1);   // a_1 t_b + a_2 t_eps
    CHECK(tlr_eval(t2, "ab") == 0 * 2 + 1);  // b_1 t_a + b_2 t_eps
    CHECK_THROWS_AS(tlr_eval(t, "c"), AlphabetError);
  }

  TEST_CASE("vector recurrences") {
    const VectorLinRec id({RatMatrix::column({1, 0})}, {RatMatrix::identity(2)});
    CHECK(vlr_eval(id, 5) == RatMatrix::column({1, 0}));
    const VectorLinRec fib({RatMatrix{{0}}, RatMatrix{{1}}}, {RatMatrix{{1}}, RatMatrix{{1}}});
    CHECK(vlr_eval(fib, 6) == RatMatrix{{8}});
    const Lrva v(fib, RatMatrix{{1}});
    CHECK(lrva_eval(v, "aaaaaa") == 8);
    const Lrva zero(id, RatMatrix::row({0, 0}));
    CHECK(lrva_eval(zero, "aaa") == 0);
  }

  TEST_CASE("probabilistic LRVA validation") {
    const RatMatrix half = RatMatrix::identity(2) * Rational(1, 2);
    const VectorLinRec rec({RatMatrix::column({1, 0}), RatMatrix::column({Rational(1, 2), Rational(1, 2)})}, {half, half});
    const Lrva good(rec, RatMatrix::row({1, 0}), 'a', true);
    CHECK(good.report().ok());
    for (std::size_t n = 0; n < 30; ++n) {
      const Rational x = lrva_eval(good, std::string(n, 'a'));
      CHECK(x.sign() >= 0);
      CHECK(x <= Rational(1));
    }

    const VectorLinRec skew({RatMatrix::column({1, 0}), RatMatrix::column({1, 0})},
                            {RatMatrix{{Rational(1, 2), 0}, {0, Rational(1, 4)}}, half});
    const auto bad2 = plrva_validate(Lrva(skew, RatMatrix::row({1, 0})));
    REQUIRE_FALSE(bad2.ok());
    CHECK(bad2.violations.front().rule == "condition 2");

    const auto bad3 = plrva_validate(Lrva(rec, RatMatrix::row({2, 0})));
    REQUIRE_FALSE(bad3.ok());
    CHECK(bad3.violations.front().rule == "condition 3");
  }
}
