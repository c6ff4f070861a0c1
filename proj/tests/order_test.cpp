#include <gtest/gtest.h>

#include "dseq/order.hpp"

using namespace dseq;

TEST(FinSubset, Basics) {
  EXPECT_TRUE(fin_subset_lt({}, {}));
  EXPECT_TRUE(fin_subset_lt({1, 2}, {3}));
  EXPECT_FALSE(fin_subset_lt({3}, {1, 2}));
  EXPECT_TRUE(fin_subset_le({3}, {3}));
  EXPECT_FALSE(fin_subset_lt({3}, {3}));
}

TEST(RestrictBelow, FinOrder) {
  EXPECT_EQ(restrict_below(FinOrder{5}, 3).size, 3u);
  EXPECT_EQ(restrict_below(FinOrder{5}, 0).size, 0u);
  EXPECT_THROW(restrict_below(FinOrder{5}, 5), OrderError);
}

TEST(RestrictMap, Basics) {
  EXPECT_EQ(restrict_map(OrderMap::identity(4), 2), OrderMap::identity(2));
  auto iota = OrderMap::inclusion(2, 5);
  auto r = restrict_map(iota, 1);
  EXPECT_EQ(r.domain(), 1u);
  EXPECT_EQ(r.codomain(), iota(std::size_t{1}));
  EXPECT_EQ(restrict_map(OrderMap(3, 7, {1, 4, 6}), 0).domain(), 0u);
  EXPECT_THROW(restrict_map(iota, 2), OrderError);
}

TEST(RestrictMap, Composition) {
  OrderMap f(4, 6, {0, 2, 3, 5});
  OrderMap g(6, 9, {1, 2, 4, 5, 7, 8});
  for (std::size_t x = 0; x < 4; ++x)
    EXPECT_EQ(restrict_map(g * f, x), restrict_map(g, f(x)) * restrict_map(f, x));
}

TEST(OrderMap, RejectsNonMonotone) {
  EXPECT_THROW(OrderMap(2, 3, {1, 1}), OrderError);
  EXPECT_THROW(OrderMap(2, 3, {0, 3}), OrderError);
}

TEST(OmegaPower, Comparison) {
  OmegaPower<FinSystem> w{FinSystem{4}};
  using T = std::vector<std::size_t>;
  EXPECT_EQ(w.compare(T{}, T{0}), Ordering::less);
  EXPECT_EQ(w.compare(T{2, 1}, T{2, 1}), Ordering::equal);
  EXPECT_EQ(w.compare(T{3}, T{2, 2, 2}), Ordering::greater);
  EXPECT_THROW(w.compare(T{1, 2}, T{}), OrderError);
}

TEST(OmegaIter, ZeroIsBase) {
  auto t = omega_iter(0, FinSystem{3});
  auto xs = t.enumerate(1);
  ASSERT_EQ(xs.size(), 3u);
  EXPECT_EQ(t.compare(xs[0], xs[1]), Ordering::less);
}

TEST(OmegaIter, OmegaSquaredMatchesBruteForce) {
  // omega^2 over the base {0,1}: weakly decreasing sequences, length below 3 means size <= 3
  auto t = omega_iter(1, FinSystem{2});
  auto xs = t.enumerate(3);
  std::vector<std::vector<std::size_t>> brute;
  for (std::size_t len = 0; len <= 2; ++len)
    for (std::size_t code = 0; code < (1u << len); ++code) {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < len; ++i) s.push_back((code >> (len - 1 - i)) & 1u);
      if (std::is_sorted(s.rbegin(), s.rend())) brute.push_back(s);
    }
  EXPECT_EQ(xs.size(), brute.size());
  // brute-force lexicographic order with extension
  auto lex = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  };
  std::sort(brute.begin(), brute.end(), lex);
  sort_by_order(t, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<std::size_t> s;
    for (const auto& a : xs[i].seq) s.push_back(a.base);
    EXPECT_EQ(s, brute[i]);
  }
}

TEST(OmegaIter, TwoLevelsOverSingleton) {
  auto t = omega_iter(2, FinSystem{1});
  using Tw = Tower<std::size_t>;
  Tw empty_inner = Tw::of(std::vector<Tw>{});
  Tw bullet_inner = Tw::of(std::vector<Tw>{Tw::of(std::size_t{0})});
  EXPECT_EQ(t.compare(Tw::of({empty_inner}), Tw::of({bullet_inner})), Ordering::less);
  for (std::size_t n = 1; n <= 2; ++n) {
    auto u = omega_iter(n, FinSystem{2});
    for (const auto& x : u.enumerate(4))
      if (x.seq.size() == 1) EXPECT_EQ(u.compare(Tw::of(std::vector<Tw>{}), x), Ordering::less);
  }
}

TEST(Linearity, FinAndOmegaPowers) {
  EXPECT_TRUE(linearity_suite(FinSystem{5}, 100).ok);
  EXPECT_TRUE(linearity_suite(OmegaPower<FinSystem>{FinSystem{2}}, 4).ok);
  EXPECT_TRUE(linearity_suite(omega_iter(2, FinSystem{2}), 5).ok);
}

TEST(Linearity, CorruptedComparatorReported) {
  // a cyclic comparator on {0,1,2}: 0 < 1 < 2 < 0
  std::vector<int> xs{0, 1, 2};
  auto cmp = [](int a, int b) -> Ordering {
    if (a == b) return Ordering::equal;
    return ((b - a + 3) % 3 == 1) ? Ordering::less : Ordering::greater;
  };
  auto r = linearity_suite(xs, cmp, [](int a) { return std::to_string(a); });
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.violation.find("transitivity"), std::string::npos) << r.violation;
}

TEST(Below, PhiStyleFilter) {
  Below<FinSystem> b(FinSystem{5}, 3);
  EXPECT_EQ(b.enumerate(1).size(), 3u);
  EXPECT_THROW(b.parse(parse_sexpr("4")), ParseError);
}
