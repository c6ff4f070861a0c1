#include <gtest/gtest.h>

#include "dseq/checks.hpp"
#include "dseq/goodstein.hpp"
#include "dseq/registry.hpp"
#include "oracles.hpp"

using namespace dseq;

namespace {
Ordering nat_cmp(const Nat& a, const Nat& b) { return a < b ? Ordering::less : (b < a ? Ordering::greater : Ordering::equal); }
}  // namespace

TEST(GTerm, Order) {
  auto g = goodstein();
  EXPECT_EQ(g->compare(gterm::zero(), gterm::unit(0)), Ordering::less);
  // base 2: 1 < 2
  auto one = gterm::unit(0);
  auto two = gterm::sum({gterm::term(gterm::unit(0), 0)});
  EXPECT_EQ(g->compare(one, two), Ordering::less);
  auto v = gterm::sum({gterm::term(gterm::unit(3), 5)});
  EXPECT_EQ(g->supp(v), (std::vector<std::size_t>{3, 5}));
}

TEST(GTerm, OrderMatchesNumericValue) {
  auto g = goodstein();
  for (unsigned k = 1; k <= 3; ++k) {
    std::vector<std::pair<Value, Nat>> vals;
    for (auto& v : g->enumerate(k, 6))
      if (auto x = eval_g(v, k + 1)) vals.emplace_back(std::move(v), *x);
    ASSERT_GT(vals.size(), 5u);
    for (const auto& [a, x] : vals)
      for (const auto& [b, y] : vals) EXPECT_EQ(g->compare(a, b), nat_cmp(x, y));
  }
}

TEST(WTerm, Basics) {
  auto w = weak_goodstein();
  auto v = wterm::sum({wterm::term(4, 2), wterm::term(1, 0)});
  EXPECT_EQ(w->supp(v), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(w->compare(wterm::sum({wterm::term(2, 0)}), wterm::sum({wterm::term(3, 0)})), Ordering::less);
  auto five = wterm::sum({wterm::term(5, 0)});
  EXPECT_EQ(w->act(OrderMap::inclusion(1, 2), five), five);
  for (unsigned k = 1; k <= 3; ++k) {
    auto vals = w->enumerate(k, 7);
    for (const auto& a : vals)
      for (const auto& b : vals) EXPECT_EQ(w->compare(a, b), nat_cmp(*eval_w(a, k + 1), *eval_w(b, k + 1)));
  }
}

TEST(Encode, WorkedExamples) {
  auto five = encode_g(5, 2);
  EXPECT_EQ(hereditary_string(five, 2), "2^{2^{2^0}} + 2^0");
  EXPECT_EQ(*eval_g(five, 3), 28);
  auto w5 = encode_w(5, 2);
  EXPECT_EQ(plain_string(w5, 2), "2^2 + 2^0");
  EXPECT_EQ(*eval_w(w5, 3), 10);
  EXPECT_THROW(encode_g(3, 1), GoodsteinError);
  EXPECT_EQ(*eval_g(gterm::zero(), 1), 0);
  EXPECT_THROW(eval_g(gterm::unit(0), 1), GoodsteinError);
}

TEST(Encode, Bijection) {
  for (unsigned b = 2; b <= 6; ++b)
    for (unsigned k = 0; k <= 10000; ++k) {
      auto v = encode_g(k, b);
      ASSERT_EQ(*eval_g(v, b), k);
      ASSERT_TRUE(goodstein()->valid(v, b - 1));
      auto w = encode_w(k, b);
      ASSERT_EQ(*eval_w(w, b), k);
      ASSERT_EQ(encode_w(*eval_w(w, b), b), w);
    }
  for (unsigned b = 2; b <= 4; ++b)
    for (const auto& v : goodstein()->enumerate(b - 1, 6))
      if (auto x = eval_g(v, b)) {
      EXPECT_EQ(encode_g(*x, b), v);
    }
}

TEST(Encode, BaseChangeAgreesWithStringRewriting) {
  for (unsigned b = 2; b <= 4; ++b)
    for (unsigned k = 0; k <= 500; ++k) {
      auto v = goodstein()->act(OrderMap::inclusion(b - 1, b), encode_g(k, b));
      auto s = oracle::rebase(oracle::hereditary(k, b), b);
      auto expect = oracle::evaluate(s, b + 1);
      auto got = eval_g(v, b + 1);
      ASSERT_EQ(expect.has_value(), got.has_value()) << k << " base " << b;
      if (got) {
      ASSERT_EQ(*got, *expect) << k << " base " << b;
    }
    }
}

TEST(ClassicRun, WorkedExample) {
  auto run = classic_run(5, 1);
  ASSERT_EQ(run.size(), 2u);
  EXPECT_EQ(*run[0].bumped, 28);
  EXPECT_EQ(*run[1].value, 27);
}

TEST(ClassicRun, SmallSeeds) {
  auto run = classic_run(0, 5);
  for (const auto& m : run) EXPECT_EQ(*m.value, 0);
  std::vector<int> three;
  for (const auto& m : classic_run(3, 5)) three.push_back(static_cast<int>(*m.value));
  EXPECT_EQ(three, (std::vector<int>{3, 3, 3, 2, 1, 0}));
}

TEST(ClassicRun, MatchesHereditaryOracle) {
  for (unsigned seed = 1; seed <= 4; ++seed) {
    auto run = classic_run(seed, 20);
    auto ref = oracle::classic_sequence(seed, 20);
    for (std::size_t i = 0; i < run.size(); ++i) {
      ASSERT_EQ(run[i].notation, ref[i]) << "seed " << seed << " stage " << i;
      auto v = oracle::evaluate(ref[i], run[i].base);
      if (v && run[i].value) {
      EXPECT_EQ(*v, *run[i].value);
    }
    }
  }
}

TEST(WeakRun, Examples) {
  auto run = weak_run(5, 1);
  EXPECT_EQ(*run[0].bumped, 10);
  EXPECT_EQ(*run[1].value, 9);
  auto one = weak_run(1, 100);
  ASSERT_EQ(one.size(), 2u);
  EXPECT_EQ(*one[1].value, 0);
  for (unsigned seed = 1; seed <= 6; ++seed) {
    bool done = false;
    auto ref = oracle::weak_sequence(seed, 100000, done);
    ASSERT_TRUE(done);
    auto run2 = weak_run(seed, 100000);
    ASSERT_EQ(run2.size(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) ASSERT_EQ(*run2[i].value, ref[i]);
  }
}

TEST(InversePrefix, Goodstein) {
  auto p = inverse_prefix(goodstein(), 12);
  ASSERT_EQ(p.size(), 12u);
  EXPECT_EQ(p.a[0], gterm::zero());
  auto ref = oracle::inverse_goodstein_values(12);
  for (std::size_t k = 0; k < 12; ++k) {
    EXPECT_EQ(*eval_g(p.a[k], static_cast<unsigned>(k + 1)), ref[k]);
    EXPECT_EQ(ref[k], k);
  }
  for (std::size_t k = 1; k < 12; ++k) EXPECT_EQ(goodstein()->compare(p.a[k - 1], p.a[k]), Ordering::less);
}

TEST(InversePrefix, MinimalityAgainstEnumeration) {
  auto g = goodstein();
  auto p = inverse_prefix(g, 6);
  for (std::size_t k = 1; k < 6; ++k)
    for (const auto& v : g->enumerate(k, 6)) {
      bool above_all = true;
      for (std::size_t j = 0; j < k; ++j) above_all = above_all && g->compare(p.a[j], v) < 0;
      if (above_all) {
      EXPECT_TRUE(g->compare(v, p.a[k]) >= 0) << g->show(v);
    }
    }
}

TEST(InversePrefix, ConstTerminates) {
  auto p = inverse_prefix(const_predilator(3), 5);
  ASSERT_EQ(p.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(p.a[k], Value::num(static_cast<std::int64_t>(k)));
  ASSERT_TRUE(p.terminated_at.has_value());
  EXPECT_EQ(*p.terminated_at, 3u);
  EXPECT_THROW(inverse_prefix(const_predilator(ConstOrder::rationals()), 3), Unsupported);
}

TEST(InversePrefix, SumIdentity) {
  // D1 = id has D1(0) empty; the sum's sequence is D2's, shifted past D1(k)
  auto d2 = goodstein();
  auto p = inverse_prefix(sum_predilator(identity_predilator(), d2), 8);
  auto q = inverse_prefix(d2, 8);
  ASSERT_EQ(p.size(), q.size());
  for (std::size_t k = 0; k < p.size(); ++k) EXPECT_EQ(p.a[k], SumPredilator::inr(q.a[k]));
}

TEST(Height, Examples) {
  EXPECT_EQ(g_height(gterm::zero()), 1u);
  EXPECT_EQ(g_height(gterm::unit(0)), 2u);
  auto g = goodstein();
  auto vals = g->enumerate(2, 6);
  for (const auto& a : vals)
    for (const auto& b : vals)
      if (g_height(a) < g_height(b)) {
      EXPECT_EQ(g->compare(a, b), Ordering::less);
    }
}

TEST(AcaForward, Examples) {
  std::size_t top = 2;
  auto tower = omega_iter(7, FinSystem{3});
  EXPECT_EQ(aca_forward_g(0, gterm::unit(1), top), TowerTerm::of(std::vector<TowerTerm>{}));
  EXPECT_EQ(aca_forward_f(1, 1), TowerTerm::of({TowerTerm::of({aca_forward_f(0, 1)})}));
  auto g = goodstein();
  std::vector<Value> vals;
  for (auto& v : g->enumerate(2, 7))
    if (g_height(v) <= 3) vals.push_back(v);
  for (const auto& a : vals) {
    auto ga = aca_forward_g(3, a, top);
    ASSERT_TRUE(tower.valid(ga)) << g->show(a);
    for (std::size_t x = 0; x <= top; ++x) EXPECT_TRUE(tower.compare(ga, aca_forward_f(3, x)) >= 0);
    for (const auto& b : vals) EXPECT_EQ(g->compare(a, b), tower.compare(ga, aca_forward_g(3, b, top)));
  }
}

TEST(AcaBackward, Examples) {
  EXPECT_EQ(aca_backward_f(1, TowerTerm::of(std::vector<TowerTerm>{}), 2), gterm::zero());
  EXPECT_EQ(aca_backward_f(0, TowerTerm::of(std::size_t{1}), 2), gterm::unit(1));
  auto tower = omega_iter(2, FinSystem{2});
  auto g = goodstein();
  auto vals = tower.enumerate(5);
  for (const auto& s : vals)
    for (const auto& t : vals)
      EXPECT_EQ(tower.compare(s, t), g->compare(aca_backward_f(2, s, 2), aca_backward_f(2, t, 2)));
}
