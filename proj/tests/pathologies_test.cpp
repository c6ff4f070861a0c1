#include <gtest/gtest.h>

#include "dseq/goodstein.hpp"
#include "dseq/pathologies.hpp"

using namespace dseq;

namespace {

BinaryTree three_nodes() { return BinaryTree::parse("-1 I\n0 L\n0 L\n"); }

// X+ term as a psi_1^+ term, without any range condition.
CTerm plus_image(const TreeFixedPoint& fp, const XTerm& a) {
  auto v = fp.pi_plus(a);
  std::vector<CTerm> elems;
  for (const auto& s : v.elems) elems.push_back(plus_image(fp, s));
  return collapse_plus(fp.predilator(), Over<CTerm>{v.shape, elems});
}

CTerm z_term(std::int64_t z) {
  static auto d = const_predilator(ConstOrder::integers());
  return collapse(*d, Over<CTerm>{Value::num(z), {}});
}

CTerm coded(const Predilator& g, std::size_t n) {
  CTerm t = collapse(g, Over<CTerm>{gterm::zero(), {}});
  for (std::size_t i = 0; i < n; ++i) t = collapse(g, Over<CTerm>{gterm::unit(0), {t}});
  return t;
}

}  // namespace

TEST(ZPoint, WindowValuesAndMinimality) {
  for (std::int64_t z = -3; z <= 3; ++z) EXPECT_EQ(z_value(z), z - 1);
  auto r = z_point_check(-3, 3);
  EXPECT_TRUE(r.condition1);
  EXPECT_GT(r.minimality_checks, 20u);
  EXPECT_TRUE(r.violations.empty());
}

TEST(ZPoint, ConditionTwoWitness) {
  for (std::int64_t sigma = -5; sigma <= 5; ++sigma) {
    std::int64_t z = sigma + 1;
    EXPECT_LE(sigma, z_value(z));
    EXPECT_GT(sigma, z_value(z - 1));
  }
  EXPECT_TRUE(z_point_check(-10, 10).condition2);
}

TEST(ZPoint, HeightFailsWithADescent) {
  auto r = z_point_check(-10, 10, 10);
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.height_fails());
  ASSERT_GE(r.descent.size(), 10u);
  EXPECT_EQ(r.descent.front(), 0);
  for (std::size_t i = 1; i < r.descent.size(); ++i) EXPECT_EQ(r.descent[i], r.descent[i - 1] - 1);
}

TEST(ZPoint, CodesAndErrors) {
  for (std::int64_t z = -50; z <= 50; ++z) EXPECT_EQ(unzigzag(zigzag(z)), z);
  EXPECT_EQ(zigzag(0), 0u);
  EXPECT_EQ(zigzag(-1), 1u);
  EXPECT_THROW(z_point_check(3, 2), PathologyError);
}

TEST(TreeFixedPoint, SingleLeaf) {
  TreeFixedPoint fp{BinaryTree()};
  auto xs = fp.enumerate(5);
  ASSERT_EQ(xs.size(), 1u);
  auto v = fp.pi_plus(xs[0]);
  EXPECT_EQ(v.shape, TreePredilator::leaf(0));
  EXPECT_TRUE(v.elems.empty());
  EXPECT_TRUE(tree_fixed_point_check(fp, 5).ok());
}

TEST(TreeFixedPoint, RootMapsToItsChildren) {
  TreeFixedPoint fp{three_nodes()};
  const auto& t = fp.tree();
  auto v = fp.pi_plus(fp.node(t.root()));
  EXPECT_EQ(v.shape, TreePredilator::apply(t.root(), 0, 1));
  ASSERT_EQ(v.elems.size(), 2u);
  EXPECT_TRUE(fp.same(v.elems[0], fp.node(t.child(t.root(), 0))));
  EXPECT_TRUE(fp.same(v.elems[1], fp.node(t.child(t.root(), 1))));
  EXPECT_EQ(fp.show(fp.node(t.root())), "<>");
  // children first, left before right
  EXPECT_TRUE(fp.compare(v.elems[0], v.elems[1]) < 0);
  EXPECT_TRUE(fp.compare(v.elems[1], fp.node(t.root())) < 0);
}

TEST(TreeFixedPoint, MembershipMatchesRangeCondition) {
  TreeFixedPoint fp{three_nodes()};
  const auto& d = fp.predilator();
  std::size_t admitted = 0, rejected = 0;
  for (const auto& a : fp.enumerate_plus(5)) {
    if (!a->p || !fp.member(a->x) || !fp.member(a->y)) continue;
    bool valid = psi_valid(d, plus_image(fp, a));
    EXPECT_EQ(fp.member(a), valid) << fp.show(a);
    bool both_below = fp.compare(a->x, a) < 0 && fp.compare(a->y, a) < 0;
    EXPECT_EQ(fp.member(a), both_below);
    (valid ? admitted : rejected) += 1;
  }
  EXPECT_GT(admitted, 10u);
  EXPECT_GT(rejected, 5u);
}

TEST(TreeFixedPoint, PTermsAreChecked) {
  TreeFixedPoint fp{three_nodes()};
  const auto& t = fp.tree();
  auto r = t.root();
  auto c0 = fp.node(t.child(r, 0)), c1 = fp.node(t.child(r, 1));
  EXPECT_THROW(fp.p_term(r, c0, c1), TreeError);
  EXPECT_THROW(fp.p_term(t.child(r, 0), c0, c0), TreeError);
  auto p = fp.p_term(r, c1, c0);
  EXPECT_TRUE(fp.member(p));
  EXPECT_TRUE(fp.same(fp.pi_plus_inverse(fp.pi_plus(p)), p));
  EXPECT_TRUE(fp.same(fp.pi_plus_inverse(Over<XTerm>{TreePredilator::apply(r, 0, 1), {c0, c1}}), fp.node(r)));
}

TEST(TreeFixedPoint, MalformedTrees) {
  EXPECT_THROW(BinaryTree::parse("-1 I\n0 L\n"), TreeError);
  EXPECT_THROW(BinaryTree::parse("-1 L\n0 L\n0 L\n"), TreeError);
  EXPECT_THROW(BinaryTree::parse("-1 I\n-1 L\n"), TreeError);
  EXPECT_THROW(BinaryTree::parse("-1 X\n"), TreeError);
}

TEST(TreeFixedPoint, AllTreesUpToFifteenNodes) {
  auto trees = full_binary_trees(15);
  EXPECT_EQ(trees.size(), 626u);
  std::size_t members = 0;
  for (const auto& t : trees) {
    TreeFixedPoint fp{t};
    auto r = tree_fixed_point_check(fp, 3);
    ASSERT_TRUE(r.ok()) << t.to_text() << (r.violations.empty() ? "" : r.violations.front());
    EXPECT_GE(r.members, t.size());
    members += r.members;
  }
  EXPECT_GT(members, 100000u);
}

TEST(TreeFixedPoint, LargerTermsOnSmallTree) {
  TreeFixedPoint fp{three_nodes()};
  auto r = tree_fixed_point_check(fp, 5);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.members, 50u);
  EXPECT_GT(r.range_values, 50u);
  ASSERT_TRUE(r.height.ok());
  auto xs = fp.enumerate(5);
  for (std::size_t y = 0; y < xs.size(); ++y)
    for (const auto& s : fp.pi_plus(xs[y]).elems)
      for (std::size_t x = 0; x < xs.size(); ++x)
        if (fp.same(xs[x], s)) {
          EXPECT_LT(*r.height.height_of(x), *r.height.height_of(y));
        }
}

TEST(TreeFixedPoint, AgreesWithCanonical) {
  TreeFixedPoint small{three_nodes()};
  auto r = compare_to_canonical(small, 5, 9);
  EXPECT_TRUE(r.ok()) << (r.violations.empty() ? "" : r.violations.front());
  EXPECT_GT(r.canonical, 20u);
  TreeFixedPoint big{full_binary_trees(15).back()};
  auto b = compare_to_canonical(big, 3, 7);
  EXPECT_TRUE(b.ok());
  EXPECT_GT(b.monotone.pairs, 10000u);
}

TEST(Successor, Examples) {
  auto e = bump_combinator(goodstein());
  auto mid = collapse(*e, Over<CTerm>{BumpPredilator::mid(0), {}});
  auto s = bump_successor(mid);
  EXPECT_EQ(show_term(*e, s), "(cl (b1 1))");
  EXPECT_TRUE(psi_valid(*e, s));
  for (const auto& x : psi1_enumerate(*e, 5)) {
    auto y = bump_successor(x);
    EXPECT_EQ(y->kids, x->kids);
    EXPECT_TRUE(psi_cmp(*e, x, y) < 0);
  }
}

TEST(Successor, BumpOfGoodstein) {
  for (std::size_t bound : {4, 5, 6}) {
    auto r = successor_check(goodstein(), bound);
    EXPECT_TRUE(r.ok()) << bound;
    EXPECT_EQ(r.with_successor, r.terms);
    EXPECT_GT(r.terms, 10u);
  }
}

TEST(Successor, BumpOfConstIntegers) {
  auto r = successor_check(const_predilator(ConstOrder::integers()), 5);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.terms, 37u);
}

TEST(AltTermination, ConstIntegersDescent) {
  auto d = const_predilator(ConstOrder::integers());
  auto a = alt_termination_from_descent(d, {z_term(0), z_term(-1), z_term(-2), z_term(-3)}, 6);
  ASSERT_TRUE(a.gap.has_value());
  EXPECT_EQ(a.stratum[*a.gap], 0u);
  EXPECT_EQ(show_term(*a.e, a.points[*a.gap]), "(cl (b1 0))");
  auto r = check_alt_termination(a, 4);
  EXPECT_TRUE(r.ok()) << (r.violations.empty() ? "" : r.violations.front());
  EXPECT_GT(r.above_gap, 10u);
  EXPECT_EQ(r.refuted + r.at_horizon, r.above_gap);
  EXPECT_GT(r.refuted_by_tau, 0u);
  EXPECT_EQ(r.at_horizon, 1u);
  // the least point above the gap sits in the last stratum
  EXPECT_EQ(a.stratum[*a.gap + 1], 3u);
}

TEST(AltTermination, GoodsteinDescent) {
  auto g = goodstein();
  auto a = alt_termination_from_descent(g, {coded(*g, 3), coded(*g, 2), coded(*g, 1), coded(*g, 0)}, 5);
  ASSERT_TRUE(a.gap.has_value());
  auto r = check_alt_termination(a, 7);
  EXPECT_TRUE(r.ok()) << (r.violations.empty() ? "" : r.violations.front());
  EXPECT_TRUE(r.transport.ok());
  EXPECT_GT(r.transport.pairs, 20u);
}

TEST(AltTermination, RejectsBadDescents) {
  auto d = const_predilator(ConstOrder::integers());
  EXPECT_THROW(alt_termination_from_descent(d, {}, 4), PathologyError);
  EXPECT_THROW(alt_termination_from_descent(d, {z_term(0), z_term(1)}, 4), PathologyError);
  EXPECT_THROW(alt_termination_from_descent(d, {z_term(0), z_term(0)}, 4), PathologyError);
}

TEST(DenseWindow, Membership) {
  auto x = window_carrier(Rational(0));
  EXPECT_FALSE(x.contains(Rational(1, 2)));
  EXPECT_TRUE(x.contains(Rational(3, 2)));
  EXPECT_FALSE(x.contains(Rational(0)));
  EXPECT_FALSE(x.contains(Rational(1)));
  EXPECT_TRUE(x.contains(Rational(-1, 1000)));
  EXPECT_EQ(parse_rational("7/2"), Rational(7, 2));
  EXPECT_EQ(parse_rational("-2/6"), Rational(-1, 3));
  EXPECT_THROW(parse_rational("x"), ParseError);
  EXPECT_THROW(parse_rational("1/0"), ParseError);
}

TEST(DenseWindow, CofinalityWitness) {
  for (const auto& r : {Rational(0), Rational(1, 3), Rational(7, 2)}) {
    auto x = window_carrier(r);
    Rational p = r + 2;
    EXPECT_TRUE(p > r && p > r + 1 && x.contains(p));
  }
}

TEST(DenseWindow, ChecksPass) {
  for (const auto& r : {Rational(0), Rational(1, 3), Rational(7, 2), Rational(-5, 7)}) {
    auto rep = dense_window_check(r, 9);
    EXPECT_TRUE(rep.ok()) << r;
    EXPECT_GT(rep.density_checks, 500u);
    EXPECT_EQ(rep.cofinality_checks, rep.samples);
  }
}

TEST(DenseWindow, ApproachStaysInCarrier) {
  Rational r(1, 3);
  auto x = window_carrier(r);
  Rational q = r + 1 + Rational(1, 1000000);
  for (const auto& eps : {Rational(1), Rational(1, 1000000000)}) {
    auto p = approach_from_below(r, q, eps);
    EXPECT_TRUE(x.contains(p));
    EXPECT_LT(p, q);
    EXPECT_LE(q - p, eps);
  }
}

TEST(DenseWindow, DistinctWindowsDiffer) {
  std::vector<Rational> rs{Rational(0), Rational(1, 3), Rational(7, 2), Rational(-2)};
  for (const auto& a : rs)
    for (const auto& b : rs) {
      auto q = distinguishing_point(a, b);
      if (a == b) {
        EXPECT_FALSE(q.has_value());
        continue;
      }
      ASSERT_TRUE(q.has_value());
      EXPECT_TRUE(window_carrier(a).contains(*q));
      EXPECT_FALSE(window_carrier(b).contains(*q));
    }
}

TEST(BackAndForth, WindowsZeroAndFive) {
  auto x = window_carrier(Rational(0)), y = window_carrier(Rational(5));
  auto p = back_and_forth(x, y, 60);
  EXPECT_TRUE(p.ok()) << p.message;
  EXPECT_EQ(p.steps, 60u);
  EXPECT_EQ(p.pairs.size(), 60u);
  EXPECT_TRUE(is_partial_isomorphism(p, x, y));
}

TEST(BackAndForth, WindowAndRationals) {
  auto x = window_carrier(Rational(7, 2)), q = rationals_carrier();
  auto p = back_and_forth(q, x, 40);
  EXPECT_TRUE(p.ok());
  EXPECT_TRUE(is_partial_isomorphism(p, q, x));
  // the first listed rational goes first
  EXPECT_EQ(p.pairs.size(), 40u);
  bool zero = false;
  for (const auto& [a, b] : p.pairs) zero = zero || a == 0;
  EXPECT_TRUE(zero);
}

TEST(BackAndForth, EmptyCarrierGetsStuck) {
  DenseCarrier none{"empty", [](const Rational&) { return false; }};
  auto p = back_and_forth(rationals_carrier(), none, 4, 1000);
  EXPECT_FALSE(p.ok());
  EXPECT_EQ(p.steps, 0u);
}

TEST(ConstZ, CanonicalIsIdentity) {
  auto r = const_z_uniqueness_demo(canonical_z(-4, 4), -4, 4);
  EXPECT_TRUE(r.isomorphism());
  ASSERT_EQ(r.map.size(), 9u);
  for (const auto& [x, z] : r.map) EXPECT_EQ(x, z);
}

TEST(ConstZ, GapBreaksConditionOne) {
  auto p = canonical_z(-5, 5);
  p.points.erase(p.points.begin() + 5);
  p.values.erase(p.values.begin() + 5);
  auto r = const_z_uniqueness_demo(p, -5, 5);
  EXPECT_FALSE(r.isomorphism());
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].rfind("(1) fails at 1", 0), 0u) << r.violations[0];
}

TEST(ConstZ, ShiftedPrefixIsIsomorphic) {
  auto r = const_z_uniqueness_demo(shifted_z(-3, 3), -3, 3);
  EXPECT_TRUE(r.isomorphism());
  for (const auto& [x, z] : r.map) EXPECT_EQ(z, x - 1);
}

TEST(ConstZ, WindowsUpToWidthTwenty) {
  for (std::int64_t w = 0; w <= 20; ++w)
    for (std::int64_t lo : {-10, 0, 7}) {
      EXPECT_TRUE(const_z_uniqueness_demo(canonical_z(lo, lo + w), lo, lo + w).isomorphism());
      EXPECT_TRUE(const_z_uniqueness_demo(shifted_z(lo, lo + w), lo, lo + w).isomorphism());
    }
}

TEST(ConstZ, NothingAboveBreaksConditionTwo) {
  auto r = const_z_uniqueness_demo(canonical_z(0, 3), 0, 5);
  EXPECT_FALSE(r.isomorphism());
  EXPECT_EQ(r.violations.front().rfind("(2)", 0), 0u);
  ZPresentation bad{{0, 1}, {1, 1}};
  EXPECT_FALSE(const_z_uniqueness_demo(bad, 1, 1).isomorphism());
  EXPECT_THROW(const_z_uniqueness_demo(ZPresentation{{1, 0}, {0, 1}}, 0, 1), PathologyError);
}
