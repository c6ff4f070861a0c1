#include <gtest/gtest.h>

#include "dseq/checks.hpp"
#include "dseq/registry.hpp"
#include "dseq/termination.hpp"

using namespace dseq;

namespace {

// Drops the largest support element and always claims element 0: violates naturality and the
// support condition.
class ForgetfulSupport final : public Predilator {
 public:
  using Predilator::compare;
  using Predilator::parse;
  using Predilator::print;
  explicit ForgetfulSupport(PredPtr d) : d_(std::move(d)) {}
  std::string name() const override { return "forgetful"; }
  bool valid(const Value& v, std::size_t b) const override { return d_->valid(v, b); }
  Ordering compare(const Value& a, const Value& b, ElemCmp e) const override { return d_->compare(a, b, e); }
  std::vector<std::size_t> supp(const Value& v) const override {
    auto s = d_->supp(v);
    if (s.empty()) return s;
    s.pop_back();
    s.insert(s.begin(), 0);
    return sorted_unique(std::move(s));
  }
  std::size_t size(const Value& v) const override { return d_->size(v); }
  std::vector<Value> enumerate(std::size_t b, std::size_t n) const override { return d_->enumerate(b, n); }
  Sexpr print(const Value& v, ElemPrint e) const override { return d_->print(v, e); }
  Value parse(const Sexpr& s, ElemParse e) const override { return d_->parse(s, e); }

 private:
  PredPtr d_;
};

std::vector<PredPtr> shipped() {
  return {goodstein(),
          weak_goodstein(),
          identity_predilator(),
          const_predilator(3),
          const_predilator(ConstOrder::integers()),
          const_predilator(ConstOrder::rationals()),
          sum_predilator(const_predilator(2), const_predilator(3)),
          sum_predilator(identity_predilator(), goodstein()),
          compose_omega(goodstein()),
          bump_combinator(goodstein()),
          bump_combinator(const_predilator(ConstOrder::integers())),
          tree_predilator(BinaryTree::parse("-1 I\n0 I\n0 L\n1 L\n1 L\n")),
          shift_compose(goodstein(), 1),
          veblen_base(),
          epsilon_predilator()};
}

}  // namespace

TEST(Predilators, SupportConditionAndNaturality) {
  OrderMap f(2, 4, {1, 3});
  OrderMap g(4, 5, {0, 1, 3, 4});
  for (const auto& d : shipped()) {
    SCOPED_TRACE(d->name());
    for (std::size_t base = 0; base <= 2; ++base)
      for (const auto& v : d->enumerate(base, 5)) {
        ASSERT_TRUE(d->valid(v, base)) << d->show(v);
        auto r = check_support_condition(*d, base, v, d->size(v));
        EXPECT_TRUE(r.ok()) << d->show(v);
      }
    auto nat = check_naturality(*d, f, 5);
    EXPECT_TRUE(nat.ok()) << (nat.violations.empty() ? "" : nat.violations.front());
    auto laws = check_functor_laws(*d, f, g, 5);
    EXPECT_TRUE(laws.ok()) << (laws.violations.empty() ? "" : laws.violations.front());
  }
}

TEST(Predilators, LinearityAndPrintParse) {
  for (const auto& d : shipped()) {
    SCOPED_TRACE(d->name());
    for (std::size_t base = 0; base <= 2; ++base) {
      auto vals = d->enumerate(base, 5);
      auto rep = linearity_suite(
          vals, [&](const Value& a, const Value& b) { return d->compare(a, b); },
          [&](const Value& a) { return d->show(a); });
      EXPECT_TRUE(rep.ok) << rep.violation;
      for (const auto& v : vals) EXPECT_EQ(d->parse(parse_sexpr(d->show(v)), base), v) << d->show(v);
    }
  }
}

TEST(Predilators, EnumerationIsCanonicalAndMonotoneInBound) {
  for (const auto& d : shipped()) {
    SCOPED_TRACE(d->name());
    auto small = d->enumerate(2, 3);
    auto big = d->enumerate(2, 5);
    for (const auto& v : small) EXPECT_NE(std::find(big.begin(), big.end(), v), big.end()) << d->show(v);
    for (const auto& v : big)
      if (d->size(v) <= 3) {
        EXPECT_NE(std::find(small.begin(), small.end(), v), small.end()) << d->show(v);
      }
    for (std::size_t i = 1; i < big.size(); ++i) EXPECT_LE(d->size(big[i - 1]), d->size(big[i]));
  }
}

TEST(SupportCondition, GoodsteinWitness) {
  auto g = goodstein();
  // (1+X)^0 (1+1) over the order 2 has support {1}
  auto v = gterm::unit(1);
  auto r = check_support_condition(*g, 2, v, 5);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.witness, gterm::unit(0));
}

TEST(SupportCondition, ConstHasEmptySupport) {
  auto c = const_predilator(3);
  auto r = check_support_condition(*c, 4, Value::num(2), 1);
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(c->supp(Value::num(2)).empty());
}

TEST(SupportCondition, CorruptedSupportFails) {
  ForgetfulSupport bad(goodstein());
  auto v = gterm::sum({gterm::term(gterm::unit(0), 1)});
  auto r = check_support_condition(bad, 2, v, 10);
  EXPECT_EQ(r.status, SupportResult::Status::violation);
  auto tight = check_support_condition(bad, 2, v, 1);
  EXPECT_EQ(tight.status, SupportResult::Status::bound_exhausted);
  EXPECT_FALSE(check_naturality(bad, OrderMap(2, 3, {1, 2}), 4).ok());
}

TEST(Naturality, ExamplesFromTheContract) {
  EXPECT_TRUE(check_naturality(*goodstein(), OrderMap::inclusion(1, 2), 5).ok());
  auto w = weak_goodstein();
  for (const auto& v : w->enumerate(3, 6)) EXPECT_EQ(w->act(OrderMap::identity(3), v), v);
  EXPECT_TRUE(check_naturality(*bump_combinator(goodstein()), OrderMap::inclusion(0, 1), 4).ok());
}

TEST(Const, Examples) {
  auto c = const_predilator(3);
  EXPECT_EQ(c->act(OrderMap::inclusion(0, 5), Value::num(2)), Value::num(2));
  auto z = const_predilator(ConstOrder::integers());
  EXPECT_TRUE(z->supp(Value::num(-4)).empty());
  auto q = std::static_pointer_cast<const ConstPredilator>(const_predilator(ConstOrder::rationals()));
  EXPECT_TRUE(q->valid(ConstPredilator::rational(-7, 3), 0));
  EXPECT_EQ(q->compare(ConstPredilator::rational(1, 3), ConstPredilator::rational(1, 2)), Ordering::less);
  EXPECT_EQ(q->parse(parse_sexpr("-2/4"), 0), ConstPredilator::rational(-1, 2));
}

TEST(Sum, Examples) {
  auto s = sum_predilator(const_predilator(2), const_predilator(3));
  auto vals = s->enumerate(0, 10);
  ASSERT_EQ(vals.size(), 5u);
  std::vector<Value> sorted = vals;
  merge_sort(sorted, [&](const Value& a, const Value& b) { return s->compare(a, b); });
  EXPECT_TRUE(sorted[0].is_node(tag::inl));
  EXPECT_TRUE(sorted[1].is_node(tag::inl));
  EXPECT_TRUE(sorted[2].is_node(tag::inr));
  EXPECT_EQ(s->compare(SumPredilator::inl(Value::num(1)), SumPredilator::inr(Value::num(0))), Ordering::less);
  auto s2 = sum_predilator(identity_predilator(), goodstein());
  auto v = SumPredilator::inr(gterm::unit(1));
  EXPECT_EQ(s2->supp(v), goodstein()->supp(gterm::unit(1)));
}

TEST(Omega, Examples) {
  auto o = compose_omega(goodstein());
  auto vals = o->enumerate(1, 4);
  auto empty = Value::node(tag::seq);
  for (const auto& v : vals)
    if (v != empty) {
      EXPECT_EQ(o->compare(empty, v), Ordering::less);
    }
  auto s = gterm::unit(0);
  EXPECT_EQ(o->supp(Value::node(tag::seq, {s, s})), goodstein()->supp(s));
  OrderMap f(1, 3, {2});
  auto pair = Value::node(tag::seq, {gterm::sum({gterm::term(gterm::unit(0), 0)}), s});
  EXPECT_EQ(o->act(f, pair), Value::node(tag::seq, {goodstein()->act(f, pair.kids[0]), goodstein()->act(f, s)}));
}

TEST(Bump, Examples) {
  auto e = bump_combinator(goodstein());
  auto s = gterm::unit(0);
  EXPECT_EQ(e->compare(BumpPredilator::low(s, 5), BumpPredilator::mid(0)), Ordering::less);
  EXPECT_EQ(e->compare(BumpPredilator::mid(0), BumpPredilator::high(s, 0)), Ordering::less);
  EXPECT_EQ(e->act(OrderMap(1, 3, {2}), BumpPredilator::mid(4)), BumpPredilator::mid(4));
  auto a = BumpPredilator::low(s, 2), b = BumpPredilator::next(a);
  EXPECT_EQ(e->compare(a, b), Ordering::less);
  EXPECT_EQ(e->supp(a), e->supp(b));
}

TEST(Tree, Examples) {
  auto single = tree_predilator(BinaryTree::parse("-1 L\n"));
  EXPECT_EQ(single->enumerate(3, 5).size(), 1u);
  EXPECT_TRUE(single->supp(TreePredilator::leaf(0)).empty());

  BinaryTree t = BinaryTree::parse("-1 I\n0 L\n0 L\n");
  auto tp = tree_predilator(t);
  // leaves <0> and <1>, root <>: left leaf < root < right leaf in the tree order
  EXPECT_EQ(t.compare(1, 0), Ordering::less);
  EXPECT_EQ(t.compare(0, 2), Ordering::greater);
  EXPECT_EQ(tp->compare(TreePredilator::leaf(1), TreePredilator::apply(0, 0, 0)), Ordering::less);
  EXPECT_EQ(tp->compare(TreePredilator::apply(0, 1, 1), TreePredilator::leaf(2)), Ordering::greater);
  EXPECT_EQ(tp->act(OrderMap(2, 4, {1, 3}), TreePredilator::apply(0, 0, 1)), TreePredilator::apply(0, 1, 3));
  EXPECT_EQ(tp->supp(TreePredilator::apply(0, 1, 0)), (std::vector<std::size_t>{0, 1}));
}

TEST(Tree, RejectsBadBranching) {
  EXPECT_THROW(BinaryTree::parse("-1 I\n0 L\n"), TreeError);
  EXPECT_THROW(BinaryTree::parse("-1 L\n0 L\n0 L\n"), TreeError);
  EXPECT_THROW(BinaryTree::parse("-1 I\n0 L\n0 L\n0 L\n"), TreeError);
  EXPECT_THROW(BinaryTree::parse("-1 L\n-1 L\n"), TreeError);
}

TEST(Shift, Examples) {
  auto g = goodstein();
  auto s0 = shift_compose(g, 0);
  for (std::size_t b = 0; b <= 2; ++b) {
    auto a = g->enumerate(b, 5), c = s0->enumerate(b, 5);
    ASSERT_EQ(a, c);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j) EXPECT_EQ(g->compare(a[i], a[j]), s0->compare(c[i], c[j]));
  }
  auto s1 = shift_compose(g, 1);
  EXPECT_EQ(s1->enumerate(0, 5), g->enumerate(1, 5));
  auto v = gterm::sum({gterm::term(gterm::unit(0), 1)});  // over alpha + 2: mentions constant 0 and element 1
  EXPECT_EQ(s1->supp(v), (std::vector<std::size_t>{0}));
  EXPECT_EQ(s1->show(v), "(+ (g (+ (g (+) (k 0))) 0))");
}

TEST(Registry, Specs) {
  EXPECT_EQ(make_predilator("goodstein")->name(), "goodstein");
  EXPECT_EQ(make_predilator("sum:const:2,const:3")->name(), "sum:const:2,const:3");
  EXPECT_EQ(make_predilator("sum:(sum:id,id),const:Z")->name(), "sum:sum:id,id,const:Z");
  EXPECT_EQ(make_predilator("shift:bump:goodstein:2")->name(), "shift:bump:goodstein:2");
  EXPECT_THROW(make_predilator("nope"), SpecError);
  EXPECT_THROW(make_predilator("const:-1"), SpecError);
}

TEST(LeastAbove, MinimalityAgainstEnumeration) {
  for (const auto& d : {goodstein(), weak_goodstein(), identity_predilator(), const_predilator(4),
                        const_predilator(ConstOrder::integers()),
                        sum_predilator(identity_predilator(), const_predilator(3))}) {
    SCOPED_TRACE(d->name());
    for (std::size_t base = 0; base <= 2; ++base) {
      auto vals = d->enumerate(base, 5);
      for (std::size_t i = 0; i < vals.size() && i < 8; ++i) {
        std::vector<Value> s{vals[i]};
        auto up = d->least_above(base, s);
        for (const auto& v : vals) {
          bool above = d->compare(vals[i], v) < 0;
          if (above && up) {
            EXPECT_TRUE(d->compare(v, *up) >= 0) << d->show(v) << " below " << d->show(*up);
          }
          if (above) {
            EXPECT_TRUE(up.has_value());
          }
        }
        if (up) {
          EXPECT_TRUE(d->compare(vals[i], *up) < 0);
        }
      }
    }
  }
}
