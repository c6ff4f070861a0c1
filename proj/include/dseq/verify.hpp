#pragma once

// Named verification groups shared by the CLI and the acceptance runner. Every check returns a
// CheckResult; a group is a list of them, run in a fixed order.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dseq/embeddings.hpp"
#include "dseq/pathologies.hpp"

namespace dseq {

struct CheckResult {
  std::string group;
  std::string name;
  std::size_t bound = 0;
  std::size_t items = 0;  // terms, pairs or samples, whichever the check counts
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

using CheckList = std::vector<CheckResult>;

inline bool all_ok(const CheckList& cs) {
  for (const auto& c : cs)
    if (!c.ok()) return false;
  return true;
}

namespace detail {

inline CheckResult from_linearity(std::string group, std::string name, std::size_t bound, const LinearityReport& r) {
  CheckResult c{std::move(group), std::move(name), bound, r.terms, {}};
  if (!r.ok) c.violations.push_back(r.violation);
  return c;
}

template <class S>
CheckResult system_linearity(std::string name, const S& sys, std::size_t bound) {
  return from_linearity("linearity", std::move(name), bound, linearity_suite(sys, bound));
}

inline CheckResult from_monotone(std::string group, const MonotonicityReport& m) {
  CheckResult c{std::move(group), m.map, m.bound, m.pairs, m.violations};
  return c;
}

inline CheckResult from_embedding(std::string group, std::string name, const EmbeddingReport& r) {
  return CheckResult{std::move(group), std::move(name), r.bound, r.pairs, r.violations};
}

// Runs f, turning an escaping exception into a violation of the named check.
inline CheckResult guarded(std::string group, std::string name, std::size_t bound,
                           const std::function<CheckResult()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return CheckResult{std::move(group), std::move(name), bound, 0, {e.what()}};
  }
}

}  // namespace detail

// G, W, const-3, const-2 + const-3 and bump(G).
inline std::vector<PredPtr> standard_predilators() {
  return {goodstein(), weak_goodstein(), const_predilator(3), sum_predilator(const_predilator(2), const_predilator(3)),
          bump_combinator(goodstein())};
}

// Irreflexivity, trichotomy and transitivity of every shipped term order.
inline CheckList linearity_checks(std::size_t bound) {
  CheckList out;
  for (auto d : {goodstein(), weak_goodstein()})
    for (std::size_t k = 0; k <= 3; ++k) {
      auto vals = d->enumerate(k, bound);
      out.push_back(detail::from_linearity(
          "linearity", d->name() + "(" + std::to_string(k) + ")", bound,
          linearity_suite(
              vals, [&](const Value& a, const Value& b) { return d->compare(a, b); },
              [&](const Value& a) { return d->show(a); })));
    }
  for (std::size_t n = 0; n <= 2; ++n)
    out.push_back(detail::system_linearity("omega^<" + std::to_string(n) + ",3>", omega_iter(n, FinSystem{3}), bound));
  out.push_back(detail::system_linearity("OT", OTSystem{}, bound));
  out.push_back(detail::system_linearity("N", NFSystem{false}, bound));
  out.push_back(detail::system_linearity("C", NFSystem{true}, bound));
  out.push_back(detail::system_linearity("phi(omega,0)", PhiSystem{}, bound));
  out.push_back(detail::system_linearity("P", PSystem{}, bound));
  for (auto d : standard_predilators()) {
    auto ts = psi1_enumerate(*d, bound);
    out.push_back(detail::from_linearity(
        "linearity", "psi1(" + d->name() + ")", bound,
        linearity_suite(
            ts, [&](const CTerm& a, const CTerm& b) { return psi_cmp(*d, a, b); },
            [&](const CTerm& t) { return show_term(*d, t); })));
  }
  return out;
}

// The names accepted by monotonicity_check besides the embedding maps.
inline std::vector<std::string> aca_map_names() { return {"aca_forward_g", "aca_backward_f"}; }

inline CheckResult monotonicity_check(const std::string& name, std::size_t bound) {
  return detail::guarded("monotonicity", name, bound, [&] {
    const auto& g = *goodstein();
    if (name == "aca_forward_g") {
      // g_3 on G({0, 1}) restricted to height <= 3, into omega^<7, {0, 1, top}>
      const std::size_t n = 3, top = 2;
      auto tower = omega_iter(2 * n + 1, FinSystem{top + 1});
      std::vector<Value> src;
      for (auto& v : g.enumerate(top, bound))
        if (g_height(v) <= n) src.push_back(std::move(v));
      return detail::from_monotone(
          "monotonicity",
          check_monotone(
              name, bound, src, [&](const Value& v) { return aca_forward_g(n, v, top); },
              [&](const Value& a, const Value& b) { return g.compare(a, b); },
              [&](const TowerTerm& a, const TowerTerm& b) { return tower.compare(a, b); },
              [&](const Value& v) { return g.show(v); }));
    }
    if (name == "aca_backward_f") {
      auto tower = omega_iter(2, FinSystem{2});
      return detail::from_monotone(
          "monotonicity",
          check_monotone(
              name, bound, tower.enumerate(bound), [](const TowerTerm& s) { return aca_backward_f(2, s, 2); },
              [&](const TowerTerm& a, const TowerTerm& b) { return tower.compare(a, b); },
              [&](const Value& a, const Value& b) { return g.compare(a, b); },
              [&](const TowerTerm& s) { return to_string(tower.print(s)); }));
    }
    return detail::from_embedding("monotonicity", name, verify_map(name, bound));
  });
}

// Every embedding map, the collapse conditions and the equimorphism round trips.
inline CheckList embedding_checks(std::size_t bound) {
  CheckList out;
  for (const auto& n : map_names()) out.push_back(monotonicity_check(n, bound));
  for (const auto& n : aca_map_names()) out.push_back(monotonicity_check(n, bound));
  for (const auto& n : collapse_names())
    out.push_back(detail::guarded("collapse", n, bound,
                                  [&] { return detail::from_embedding("collapse", n, verify_collapse(n, bound)); }));
  for (const auto& p : pair_names())
    out.push_back(detail::guarded("equimorphism", p, bound, [&] {
      return detail::from_embedding("equimorphism", p, equimorphism_suite(p, bound));
    }));
  return out;
}

// Identities that hold exactly: the support of kappa, the non-injective tail map, coded naturals
// and the phi subterm property.
inline CheckList identity_checks(std::size_t bound) {
  CheckList out;
  out.push_back(detail::guarded("identity", "E(kappa) = supp", bound, [&] {
    auto samples = values_over(*goodstein(), c_terms(bound), bound, 3);
    auto r = kappa_support_check(samples);
    return CheckResult{"identity", "E(kappa) = supp", bound, samples.size(), r.violations};
  }));
  out.push_back(detail::guarded("identity", "f_seq_tail collision", 0, [&] {
    CheckResult c{"identity", "f_seq_tail collision", 0, 2, {}};
    auto z = p_zero();
    auto psi0 = p_mono(0, z), om_psi0 = p_mono(1, z);
    auto lhs = f_seq_tail({p_add(om_psi0, psi0), psi0});
    auto rhs = f_seq_tail({om_psi0, psi0});
    auto want = p_add(om_psi0, p_mono(0, psi0));
    if (p_cmp(lhs, rhs) != 0) c.violations.push_back(p_show(lhs) + " != " + p_show(rhs));
    if (p_cmp(lhs, want) != 0) c.violations.push_back(p_show(lhs) + " != " + p_show(want));
    return c;
  }));
  out.push_back(detail::guarded("identity", "coded naturals", 6, [&] {
    CheckResult c{"identity", "coded naturals", 6, 7, {}};
    const auto& g = *goodstein();
    for (std::size_t n = 0; n <= 6; ++n) {
      if (!nf_collapsed(nf_nat(n))) c.violations.push_back("C: " + std::to_string(n) + " is not collapsed");
      if (!psi_valid(g, psi_nat(n))) c.violations.push_back("psi1(G): " + std::to_string(n) + " is not a member");
      if (n == 0) continue;
      if (nf_cmp(nf_nat(n - 1), nf_nat(n)) >= 0) c.violations.push_back("C: " + std::to_string(n) + " not above its predecessor");
      if (psi_cmp(g, psi_nat(n - 1), psi_nat(n)) >= 0)
        c.violations.push_back("psi1(G): " + std::to_string(n) + " not above its predecessor");
    }
    return c;
  }));
  out.push_back(detail::guarded("identity", "phi subterm property", bound, [&] {
    auto r = phi_subterm_check(phi_enumerate(bound));
    return CheckResult{"identity", "phi subterm property", bound, r.checked, r.violations};
  }));
  return out;
}

// Both round trips between termination prefixes and fixed-point fragments, for prefixes of at
// most `max_terms` terms.
inline CheckList round_trip_checks(std::size_t max_terms = 12, std::size_t term_bound = 9) {
  CheckList out;
  for (auto d : standard_predilators()) {
    out.push_back(detail::guarded("round trip", "termination-fp-termination " + d->name(), max_terms, [&] {
      CheckResult c{"round trip", "termination-fp-termination " + d->name(), max_terms, 0, {}};
      for (std::size_t n = 0; n <= max_terms; ++n) {
        auto p = inverse_prefix(d, n);
        auto back = fp_to_termination(d, termination_to_fp(p));
        ++c.items;
        bool same = back.size() == p.size();
        for (std::size_t x = 0; same && x < p.size(); ++x) same = back.a[x] == p.a[x];
        if (!same) c.violations.push_back("prefix of length " + std::to_string(n));
      }
      return c;
    }));
    out.push_back(detail::guarded("round trip", "fp-termination-fp " + d->name(), max_terms, [&] {
      CheckResult c{"round trip", "fp-termination-fp " + d->name(), max_terms, 0, {}};
      auto all = psi1_enumerate(*d, term_bound);
      sort_terms(*d, all);
      for (std::size_t k = 0; k <= std::min(max_terms, all.size()); ++k) {
        std::vector<CTerm> pre;
        for (const auto& t : all) {
          bool closed = true;
          for (const auto& ch : t->kids) closed = closed && find_term(*d, pre, ch).has_value();
          if (closed && pre.size() < k) pre.push_back(t);
        }
        sort_terms(*d, pre);
        auto back = termination_to_fp(fp_to_termination(d, pre));
        ++c.items;
        bool same = back.size() == pre.size();
        for (std::size_t i = 0; same && i < pre.size(); ++i) same = same_term(*d, back[i], pre[i]);
        if (!same) c.violations.push_back("fragment of " + std::to_string(k) + " terms");
      }
      return c;
    }));
  }
  return out;
}

// Height synthesis on psi_1 fragments and tree fixed points, and its failure on the integers.
inline CheckList height_checks(std::size_t bound, std::size_t tree_nodes = 15, std::size_t tree_bound = 3) {
  CheckList out;
  for (auto d : standard_predilators())
    out.push_back(detail::guarded("height", "psi1(" + d->name() + ")", bound, [&] {
      auto ts = psi1_enumerate(*d, bound);
      sort_terms(*d, ts);
      auto h = synthesize_height(*d, ts);
      CheckResult c{"height", "psi1(" + d->name() + ")", bound, ts.size(), {}};
      if (!h.ok()) c.violations.push_back(h.message.empty() ? "height synthesis failed" : h.message);
      for (std::size_t y = 0; h.ok() && y < ts.size(); ++y)
        for (const auto& ch : ts[y]->kids) {
          auto x = find_term(*d, ts, ch);
          if (!x || *h.height_of(*x) >= *h.height_of(y))
            c.violations.push_back("height does not increase at " + show_term(*d, ts[y]));
        }
      return c;
    }));
  out.push_back(detail::guarded("height", "tree fixed points", tree_bound, [&] {
    CheckResult c{"height", "tree fixed points up to " + std::to_string(tree_nodes) + " nodes", tree_bound, 0, {}};
    for (const auto& t : full_binary_trees(tree_nodes)) {
      TreeFixedPoint fp{t};
      auto r = tree_fixed_point_check(fp, tree_bound);
      c.items += r.members;
      if (!r.ok() && c.violations.size() < 5)
        c.violations.push_back(t.to_text() + ": " + (r.violations.empty() ? "check failed" : r.violations.front()));
    }
    return c;
  }));
  out.push_back(detail::guarded("height", "integers exhaust fuel", 10, [&] {
    auto r = z_point_check(-10, 10, 10);
    CheckResult c{"height", "integers exhaust fuel", 10, r.descent.size(), {}};
    if (!r.height_fails()) c.violations.push_back("height synthesis terminated on the integers");
    if (r.descent.size() < 10) c.violations.push_back("descent shorter than 10");
    for (std::size_t i = 1; i < r.descent.size(); ++i)
      if (r.descent[i] != r.descent[i - 1] - 1) c.violations.push_back("descent is not a precedence chain");
    return c;
  }));
  return out;
}

// The integer point, the successor property, dense windows and constant-Z presentations.
inline CheckList pathology_checks(std::size_t bound) {
  CheckList out;
  out.push_back(detail::guarded("pathology", "z point [-10,10]", 10, [&] {
    auto r = z_point_check(-10, 10);
    CheckResult c{"pathology", "z point [-10,10]", 10, r.minimality_checks + r.cofinality_checks, r.violations};
    if (!r.condition1) c.violations.push_back("condition (1) fails");
    if (!r.condition2) c.violations.push_back("condition (2) fails");
    return c;
  }));
  out.push_back(detail::guarded("pathology", "successor bump(G)", bound, [&] {
    auto r = successor_check(goodstein(), bound);
    CheckResult c{"pathology", "successor bump(G)", bound, r.terms, r.violations};
    if (r.with_successor != r.terms)
      c.violations.push_back(std::to_string(r.terms - r.with_successor) + " terms without a successor");
    return c;
  }));
  for (const auto& r : {Rational(0), Rational(1, 3), Rational(7, 2)}) {
    std::string name = "dense window r=" + show_rational(r);
    out.push_back(detail::guarded("pathology", name, 9, [&] {
      auto rep = dense_window_check(r, 9);
      return CheckResult{"pathology", name, 9, rep.density_checks + rep.cofinality_checks, rep.violations};
    }));
  }
  out.push_back(detail::guarded("pathology", "const-Z windows", 20, [&] {
    CheckResult c{"pathology", "const-Z windows up to width 20", 20, 0, {}};
    for (std::int64_t w = 0; w <= 20; ++w)
      for (std::int64_t lo : {-10, 0, 7})
        for (const auto& p : {canonical_z(lo, lo + w), shifted_z(lo, lo + w)}) {
          ++c.items;
          auto r = const_z_uniqueness_demo(p, lo, lo + w);
          if (!r.isomorphism())
            c.violations.push_back("[" + std::to_string(lo) + "," + std::to_string(lo + w) +
                                   "]: " + (r.violations.empty() ? "no isomorphism" : r.violations.front()));
        }
    return c;
  }));
  return out;
}

// unique_hom(psi_1(D), psi_1(D)) is the identity.
inline CheckList hom_checks(std::size_t bound) {
  CheckList out;
  for (auto d : {goodstein(), weak_goodstein()})
    out.push_back(detail::guarded("hom", "identity on psi1(" + d->name() + ")", bound, [&] {
      auto ts = psi1_enumerate(*d, bound);
      auto r = psi_hom(*d, ts);
      CheckResult c{"hom", "identity on psi1(" + d->name() + ")", bound, ts.size(), r.errors};
      for (std::size_t i = 0; i < ts.size(); ++i)
        if (!r.image[i] || !same_term(*d, *r.image[i], ts[i]))
          c.violations.push_back("moved " + show_term(*d, ts[i]));
      return c;
    }));
  return out;
}

inline std::vector<std::string> group_names() {
  return {"linearity", "embeddings", "identities", "round-trip", "height", "pathologies", "hom"};
}

inline CheckList run_group(const std::string& group, std::size_t bound) {
  if (group == "linearity") return linearity_checks(bound);
  if (group == "embeddings") return embedding_checks(bound);
  if (group == "identities") return identity_checks(bound);
  if (group == "round-trip") return round_trip_checks();
  if (group == "height") return height_checks(bound);
  if (group == "pathologies") return pathology_checks(bound);
  if (group == "hom") return hom_checks(bound);
  throw std::invalid_argument("unknown group: " + group);
}

}  // namespace dseq
