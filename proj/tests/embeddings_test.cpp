#include <gtest/gtest.h>

#include <map>
#include <string>

#include "dseq/embeddings.hpp"

using namespace dseq;

namespace {

const Predilator& G() { return *goodstein(); }

void expect_clean(const EmbeddingReport& r) {
  EXPECT_TRUE(r.ok()) << (r.violations.empty() ? "" : r.violations.front());
  EXPECT_GT(r.pairs, 0u);
}

PTerm psi(const PTerm& x) { return p_mono(0, x); }

CTerm w_nat(std::size_t n) {
  CTerm t = make_term(wterm::zero(), {});
  for (std::size_t i = 0; i < n; ++i) t = make_term(wterm::sum({wterm::term(0, 0)}), {t});
  return t;
}

}  // namespace

TEST(KappaC, Examples) {
  EXPECT_TRUE(nf_equal(kappa_C(Over<NF>{gterm::zero(), {}}), nf_zero()));
  // kappa((1+C)^0 (1 + theta(0))) = Omega^0 * theta(0)
  auto one = nf_nat(1);
  EXPECT_TRUE(nf_equal(kappa_C(Over<NF>{gterm::unit(0), {one}}), one));
  EXPECT_THROW(kappa_C(Over<NF>{gterm::unit(0), {nf_zero()}}), NotationError);
}

TEST(KappaC, SupportIsE) {
  auto samples = values_over(G(), c_terms(5), 4, 3);
  ASSERT_GT(samples.size(), 50u);
  auto r = kappa_support_check(samples);
  EXPECT_TRUE(r.ok()) << (r.violations.empty() ? "" : r.violations.front());
}

TEST(KappaC, CollapseConditionsAndSurjectivity) {
  expect_clean(verify_collapse("theta_C", 4));
  auto cs = c_terms(9);
  for (const auto& s : OTSystem{true}.enumerate(5)) cs.push_back(bhord_to_C(s));
  for (const auto& t : psi1_enumerate(G(), 8)) cs.push_back(psi1G_to_C(t));
  ASSERT_GT(cs.size(), 50u);
  auto r = kappa_surjectivity_check(cs);
  EXPECT_EQ(r.samples, cs.size());
  EXPECT_TRUE(r.ok()) << (r.violations.empty() ? "" : r.violations.front());
  expect_clean(verify_map("kappa_C", 5));
}

TEST(GoodsteinS, CodedNaturals) {
  for (std::size_t n = 0; n <= 6; ++n) {
    auto t = psi_nat(n);
    EXPECT_EQ(psi_nat_index(t), n);
    if (n <= 5) {
      EXPECT_TRUE(goodstein_S(t)) << n;
    }
    EXPECT_EQ(kappa_plus(t).size(), n);
    if (n > 0) {
      EXPECT_TRUE(psi_cmp(G(), psi_nat(n - 1), t) < 0);
    }
  }
}

TEST(GoodsteinS, RejectsOtherCoefficients) {
  auto k = make_term(gterm::sum({gterm::term(gterm::unit(0), 0)}), {psi_nat(0)});
  EXPECT_FALSE(psi_nat_index(k).has_value());
  auto t = make_term(gterm::unit(0), {k});
  EXPECT_FALSE(goodstein_S_plus(t));
  EXPECT_THROW(kappa_plus(t), EmbeddingError);
}

TEST(GoodsteinS, KappaPlusIsAnIsomorphism) {
  std::vector<CTerm> plus;
  for (auto& t : psi1_plus_enumerate(G(), 8))
    if (goodstein_S_plus(t)) plus.push_back(t);
  ASSERT_GT(plus.size(), 20u);
  for (const auto& t : plus) EXPECT_TRUE(same_term(G(), kappa_plus_inverse(kappa_plus(t)), t)) << show_term(G(), t);
  expect_clean(verify_map("kappa_plus", 8));
}

TEST(GoodsteinS, SupportStaysInS) {
  auto s = goodstein_S_terms(8);
  ASSERT_GT(s.size(), 10u);
  for (const auto& t : s)
    for (const auto& v : kappa_plus(t))
      for (const auto& y : v.elems) {
        EXPECT_TRUE(goodstein_S(y)) << show_term(G(), t);
        EXPECT_TRUE(psi_cmp(G(), y, t) < 0) << show_term(G(), t);
      }
}

TEST(GoodsteinS, RangeCondition) {
  const auto& c = goodstein_S_collapse();
  auto seqs = c.sequences_over(goodstein(), goodstein_S_terms(7), 4, 2);
  ASSERT_GT(seqs.size(), 100u);
  auto r = range_check(c, seqs, [](const CTerm& t) { return show_term(G(), t); });
  EXPECT_TRUE(r.ok()) << (r.violations.empty() ? "" : r.violations.front());
  EXPECT_GT(r.in_range, 0u);
  EXPECT_LT(r.in_range, r.samples);
}

TEST(GoodsteinS, ThetaIsABachmannHowardCollapse) { expect_clean(verify_collapse("theta_S_G", 5)); }

TEST(Psi1GToBhord, Examples) {
  EXPECT_TRUE(ot_equal(psi1G_to_bhord(psi_nat(0)), ot_theta(ot_zero())));
  for (std::size_t n = 1; n <= 6; ++n)
    EXPECT_TRUE(ot_cmp(psi1G_to_bhord(psi_nat(n - 1)), psi1G_to_bhord(psi_nat(n))) < 0) << n;
  // coded naturals go to coded naturals shifted by one
  for (std::size_t n = 0; n <= 6; ++n) EXPECT_TRUE(nf_equal(psi1G_to_C(psi_nat(n)), nf_nat(n + 1))) << n;
}

TEST(Psi1GToBhord, Monotone) { expect_clean(verify_map("psi1G_to_bhord", 9)); }

TEST(BhordToPsi1G, Examples) {
  auto a = bhord_to_psi1G(ot_zero());
  auto b = bhord_to_psi1G(ot_theta(ot_zero()));
  auto c = bhord_to_psi1G(ot_theta(ot_theta(ot_zero())));
  EXPECT_TRUE(psi_cmp(G(), a, b) < 0);
  EXPECT_TRUE(psi_cmp(G(), b, c) < 0);
  for (const auto& s : OTSystem{true}.enumerate(5)) {
    auto t = bhord_to_psi1G(s);
    EXPECT_TRUE(goodstein_S(t)) << ot_show(s);
    if (!ot_is_zero(s)) {
      EXPECT_TRUE(psi_cmp(G(), a, t) < 0) << ot_show(s);
    }
  }
  EXPECT_THROW(bhord_to_psi1G(ot_Omega()), NotationError);
}

TEST(BhordToPsi1G, CodedNaturalsFromC) {
  for (std::size_t n = 2; n <= 6; ++n)
    EXPECT_TRUE(psi_cmp(G(), C_to_S(nf_nat(n - 1)), C_to_S(nf_nat(n))) < 0) << n;
}

TEST(BhordToPsi1G, Monotone) { expect_clean(verify_map("bhord_to_psi1G", 5)); }

TEST(PhiToBh, Examples) {
  const auto& d = *veblen_base();
  EXPECT_EQ(to_string(print_bh(d, phi_to_bh(phi_zero()))), "(th (v0))");
  EXPECT_EQ(to_string(print_bh(d, phi_to_bh(phi_make(0, phi_zero())))), "(th (v1 0 (th (v0))))");
  auto one = phi_make(0, phi_zero());
  EXPECT_EQ(to_string(print_bh(d, phi_to_bh(phi_sum({one, one})))),
            "(th (v0 (th (v1 0 (th (v0)))) (th (v1 0 (th (v0))))))");
  expect_clean(verify_map("phi_to_bh", 7));
}

TEST(FSeq, Examples) {
  auto z = p_zero();
  EXPECT_TRUE(p_cmp(f_seq({}), z) == 0);
  // psi(0) + psi(psi(0)) absorbs its first summand
  EXPECT_TRUE(p_cmp(f_seq({psi(z)}), p_add(psi(z), psi(psi(z)))) == 0);
  EXPECT_TRUE(p_cmp(f_seq({psi(z)}), psi(psi(z))) == 0);
  expect_clean(verify_map("f_seq", 6));
}

TEST(FSeq, PreimageAgreesWithSearch) {
  const std::size_t bound = 6;
  std::map<std::string, PSeq> found;
  auto pool = p_enumerate(bound, true);
  merge_sort(pool, [](const PTerm& a, const PTerm& b) { return p_cmp(b, a); });
  for (auto& s : weakly_decreasing_sequences(pool, 2 * bound, p_size)) {
    auto x = f_seq(s);
    if (p_size(x) <= bound) found.emplace(p_show(x), s);
  }
  std::size_t hits = 0;
  for (const auto& x : p_enumerate(bound)) {
    auto pre = f_seq_preimage(x);
    auto it = found.find(p_show(x));
    ASSERT_EQ(pre.has_value(), it != found.end()) << p_show(x);
    if (pre) {
      ++hits;
      EXPECT_TRUE(omega_power_cmp(*pre, it->second, p_cmp) == 0) << p_show(x);
    }
  }
  EXPECT_GT(hits, 5u);
}

TEST(PomegaS, SupportBelowAndMembership) {
  auto s = pomega_S_terms(9);
  ASSERT_GT(s.size(), 20u);
  for (const auto& t : s) {
    EXPECT_TRUE(p_member_psi(t)) << p_show(t);
    EXPECT_TRUE(p_cmp(pi_S_inverse(pi_S(t)), t) == 0) << p_show(t);
    for (const auto& v : pi_S(t))
      for (const auto& y : v.elems) EXPECT_TRUE(p_cmp(y, t) < 0) << p_show(t);
  }
  expect_clean(verify_map("pi_S", 9));
}

TEST(PomegaS, RangeCondition) {
  const auto& c = pomega_S_collapse();
  auto seqs = c.sequences_over(veblen_base(), pomega_S_terms(7), 4, 2);
  ASSERT_GT(seqs.size(), 100u);
  auto r = range_check(c, seqs, p_show);
  EXPECT_TRUE(r.ok()) << (r.violations.empty() ? "" : r.violations.front());
  EXPECT_GT(r.in_range, 0u);
  EXPECT_LT(r.in_range, r.samples);
}

TEST(PomegaS, ThetaIsABachmannHowardCollapse) { expect_clean(verify_collapse("theta_S_D", 6)); }

TEST(PhiToPOmega, Examples) {
  auto zero = phi_to_pOmega(phi_zero());
  auto a = phi_to_pOmega(phi_make(0, phi_zero()));
  auto b = phi_to_pOmega(phi_make(1, phi_zero()));
  EXPECT_TRUE(p_cmp(a, b) < 0);
  for (const auto& x : phi_enumerate(5)) {
    auto y = phi_to_pOmega(x);
    EXPECT_TRUE(pomega_S(y)) << phi_show(x);
    if (x->kind != PhiNode::zero) {
      EXPECT_TRUE(p_cmp(zero, y) < 0) << phi_show(x);
    }
  }
  expect_clean(verify_map("phi_to_pOmega", 7));
}

TEST(POmegaToPsi1W, Examples) {
  auto h0 = pOmega_to_psi1W(p_zero());
  EXPECT_TRUE(h0->kids.empty());
  EXPECT_EQ(h0->payload, wterm::zero());
  // f(<Omega psi(0) + psi(0), psi(0)>) = Omega psi(0) + psi(psi(0)) = f(<Omega psi(0), psi(0)>)
  auto z = p_zero();
  auto big = p_make({{1, z}, {0, z}});
  auto omega_psi0 = p_mono(1, z);
  auto expect = p_make({{1, z}, {0, psi(z)}});
  EXPECT_TRUE(p_cmp(f_seq_tail({big, psi(z)}), expect) == 0);
  EXPECT_TRUE(p_cmp(f_seq_tail({omega_psi0, psi(z)}), expect) == 0);
  EXPECT_TRUE(p_cmp(omega_psi0, big) < 0);
  expect_clean(verify_map("f_seq_tail", 7));
  expect_clean(verify_map("pOmega_to_psi1W", 9));
}

TEST(Psi1WToPhi, Examples) {
  auto one = phi_one();
  EXPECT_EQ(psi1W_to_phi(w_nat(0))->kind, PhiNode::zero);
  EXPECT_TRUE(phi_equal(psi1W_to_phi(w_nat(1)), phi_make(0, one)));
  for (std::size_t n = 1; n <= 6; ++n)
    EXPECT_TRUE(phi_cmp(psi1W_to_phi(w_nat(n - 1)), psi1W_to_phi(w_nat(n))) < 0) << n;
  // the sum collapses when the new summand is larger
  auto big = phi_make(1, phi_zero());
  EXPECT_TRUE(phi_equal(phi_add(one, big), big));
  EXPECT_EQ(phi_add(big, one)->kind, PhiNode::sum);
  expect_clean(verify_map("psi1W_to_phi", 10));
}

TEST(Equimorphism, AllPairs) {
  for (const auto& p : pair_names()) {
    auto r = equimorphism_suite(p, 5);
    EXPECT_TRUE(r.ok()) << p << ": " << (r.violations.empty() ? "" : r.violations.front());
    EXPECT_GT(r.pairs, 0u) << p;
  }
  EXPECT_THROW(equimorphism_suite("nope", 3), std::invalid_argument);
}
