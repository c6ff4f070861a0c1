#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dseq/fixpoint.hpp"
#include "dseq/goodstein.hpp"
#include "dseq/notations.hpp"
#include "dseq/registry.hpp"

namespace dseq {

struct EmbeddingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmbeddingReport {
  std::string source;
  std::string target;
  std::size_t bound = 0;
  std::size_t terms = 0;
  std::size_t pairs = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }

  void absorb(const MonotonicityReport& m, std::size_t max_violations = 10) {
    terms += m.terms;
    pairs += m.pairs;
    for (const auto& v : m.violations)
      if (violations.size() < max_violations) violations.push_back(m.map + ": " + v);
  }
  void absorb(const std::string& what, const std::vector<std::string>& vs, std::size_t max_violations = 10) {
    for (const auto& v : vs)
      if (violations.size() < max_violations) violations.push_back(what + ": " + v);
  }
};

// ---------------------------------------------------------------------------------------------
// Sampling values over a pool

// All values of d of shape size at most shape_size whose support has k <= max_k elements, with the
// elements drawn increasingly from `pool` (which must be strictly ascending).
template <class X>
std::vector<Over<X>> values_over(const Predilator& d, const std::vector<X>& pool, std::size_t shape_size,
                                 std::size_t max_k) {
  std::vector<Over<X>> out;
  for (std::size_t k = 0; k <= max_k && k <= pool.size(); ++k) {
    std::vector<Value> shapes;
    for (auto& v : d.enumerate(k, shape_size))
      if (d.supp(v).size() == k) shapes.push_back(std::move(v));
    if (shapes.empty()) continue;
    std::vector<X> chosen;
    std::function<void(std::size_t)> pick = [&](std::size_t from) {
      if (chosen.size() == k) {
        for (const auto& s : shapes) out.push_back(Over<X>{s, chosen});
        return;
      }
      for (std::size_t i = from; i + (k - chosen.size()) <= pool.size(); ++i) {
        chosen.push_back(pool[i]);
        pick(i + 1);
        chosen.pop_back();
      }
    };
    pick(0);
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// 1-fixed points of omega o D and their Bachmann-Howard collapse

// A suborder X with an embedding pi: X -> (omega o D)(X). Values of omega o D are weakly
// decreasing lists of D-values over X.
template <class X>
struct OmegaCollapse {
  using Seq = std::vector<Over<X>>;

  const Predilator* d = nullptr;
  std::function<Ordering(const X&, const X&)> cmp;
  std::function<Seq(const X&)> pi;
  // The element with the given image, or nullopt outside the range.
  std::function<std::optional<X>(const Seq&)> pi_inverse;

  Ordering value_cmp(const Over<X>& a, const Over<X>& b) const { return compare_over(*d, a, b, cmp); }
  Ordering seq_cmp(const Seq& a, const Seq& b) const {
    return omega_power_cmp(a, b, [&](const Over<X>& x, const Over<X>& y) { return value_cmp(x, y); });
  }

  // G_0(sigma) <_fin sigma
  bool in_range(const Seq& s) const {
    for (const auto& v : s)
      for (const auto& y : v.elems)
        if (seq_cmp(pi(y), s) >= 0) return false;
    return true;
  }

  // s + omega^v
  Seq append(Seq s, const Over<X>& v) const {
    while (!s.empty() && value_cmp(s.back(), v) < 0) s.pop_back();
    s.push_back(v);
    return s;
  }

  // Theta(sigma) = pi^-1(pi(max supp sigma) + omega^sigma).
  std::optional<X> theta(const Over<X>& sigma) const {
    Seq base;
    if (!sigma.elems.empty()) {
      const X* top = &sigma.elems[0];
      for (const auto& y : sigma.elems)
        if (cmp(y, *top) > 0) top = &y;
      base = pi(*top);
    }
    return pi_inverse(append(std::move(base), sigma));
  }

  // All weakly decreasing sequences over the pool, as in values_over.
  std::vector<Seq> sequences_over(PredPtr dp, const std::vector<X>& pool, std::size_t shape_size,
                                  std::size_t max_k) const {
    auto od = compose_omega(std::move(dp));
    std::vector<Seq> out;
    for (const auto& v : values_over(*od, pool, shape_size, max_k)) {
      Seq s;
      for (const auto& k : v.shape.kids) s.push_back(make_over(*d, k, v.elems, cmp));
      out.push_back(std::move(s));
    }
    return out;
  }
};

struct RangeReport {
  std::size_t samples = 0;
  std::size_t in_range = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// pi^-1 is defined exactly on the values satisfying G_0(sigma) <_fin sigma, and inverts pi there.
template <class X, class Print>
RangeReport range_check(const OmegaCollapse<X>& c, const std::vector<typename OmegaCollapse<X>::Seq>& samples,
                        Print print, std::size_t max_violations = 5) {
  RangeReport r;
  auto show = [&](const typename OmegaCollapse<X>::Seq& s) {
    std::string out = "<";
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += ", ";
      out += to_string(c.d->print(s[i].shape, [&](std::int64_t k) {
        return Sexpr::make_atom(print(s[i].elems[static_cast<std::size_t>(k)]));
      }));
    }
    return out + ">";
  };
  for (const auto& s : samples) {
    ++r.samples;
    bool want = c.in_range(s);
    auto got = c.pi_inverse(s);
    if (want) ++r.in_range;
    if (got.has_value() != want) {
      if (r.violations.size() < max_violations)
        r.violations.push_back(std::string(want ? "missing preimage for " : "unexpected preimage for ") + show(s));
    } else if (got && c.seq_cmp(c.pi(*got), s) != 0) {
      if (r.violations.size() < max_violations) r.violations.push_back("pi does not invert at " + show(s));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------------------------
// The theta-terms C of the collapsed normal forms, and kappa

inline bool c_is_theta(const NF& c) {
  return c->parts.size() == 1 && c->parts[0].first->parts.empty() && c->parts[0].second->is_theta();
}
// Omega^0 * theta(d)
inline NF c_theta(NF d) { return nf_make({{nf_zero(), coef_theta(std::move(d))}}); }
inline const NF& c_arg(const NF& c) { return c->parts[0].second->arg; }

// kappa((1+C)^g0 (1+c0) + ...) = Omega^kappa(g0) * c0 + ...
inline NF kappa_C(const Value& shape, const std::vector<NF>& elems) {
  std::vector<std::pair<NF, Coef>> parts;
  for (const auto& t : shape.kids) {
    const NF& c = elems.at(static_cast<std::size_t>(gterm::coef(t)));
    if (!c_is_theta(c)) throw NotationError("kappa: coefficient is not a theta-term: " + nf_show(c));
    parts.emplace_back(kappa_C(gterm::exp(t), elems), c->parts[0].second);
  }
  return nf_make(std::move(parts));
}
inline NF kappa_C(const Over<NF>& s) { return kappa_C(s.shape, s.elems); }
inline NF theta_C(const Over<NF>& s) { return c_theta(kappa_C(s)); }

namespace detail {

inline Value kappa_shape(const NF& d, std::vector<NF>& pool) {
  Value v = gterm::zero();
  for (const auto& [g, c] : d->parts) {
    if (!c->is_theta()) throw NotationError("kappa: coefficient is not a theta-term in " + nf_show(d));
    Value e = kappa_shape(g, pool);
    pool.push_back(nf_make({{nf_zero(), c}}));
    v.kids.push_back(gterm::term(std::move(e), static_cast<std::int64_t>(pool.size() - 1)));
  }
  return v;
}

}  // namespace detail

// The value sigma with kappa(sigma) = d, for d in the collapsed normal forms.
inline Over<NF> kappa_C_inverse(const NF& d) {
  std::vector<NF> pool;
  Value shape = detail::kappa_shape(d, pool);
  return make_over(*goodstein(), shape, pool, nf_cmp);
}

// C up to the given size, ascending.
inline std::vector<NF> c_terms(std::size_t bound) {
  std::vector<NF> out;
  for (auto& n : NFSystem{true}.enumerate(bound))
    if (c_is_theta(n)) out.push_back(std::move(n));
  merge_sort(out, nf_cmp);
  return out;
}

struct SupportReport {
  std::size_t samples = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// E(kappa(sigma)) = supp(sigma), as sets of terms.
inline SupportReport kappa_support_check(const std::vector<Over<NF>>& samples, std::size_t max_violations = 5) {
  SupportReport r;
  for (const auto& s : samples) {
    ++r.samples;
    auto es = ot_E(eval_nf(kappa_C(s)));
    std::vector<OT> supp;
    for (const auto& e : s.elems) supp.push_back(eval_nf(e));
    auto contains = [](const std::vector<OT>& xs, const OT& y) {
      for (const auto& x : xs)
        if (ot_equal(x, y)) return true;
      return false;
    };
    bool same = es.size() == supp.size();
    for (const auto& e : es) same = same && contains(supp, e);
    if (!same && r.violations.size() < max_violations)
      r.violations.push_back("E(kappa) differs from the support at " + nf_show(kappa_C(s)));
  }
  return r;
}

// theta o kappa hits every listed element of C.
inline SupportReport kappa_surjectivity_check(const std::vector<NF>& cs, std::size_t max_violations = 5) {
  SupportReport r;
  const auto& g = *goodstein();
  for (const auto& c : cs) {
    ++r.samples;
    auto s = kappa_C_inverse(c_arg(c));
    if (!g.valid(s.shape, s.elems.size()) || !nf_equal(theta_C(s), c))
      if (r.violations.size() < max_violations) r.violations.push_back("no preimage for " + nf_show(c));
  }
  return r;
}

// ---------------------------------------------------------------------------------------------
// psi_1(G) into the theta-terms below Omega

inline NF psi1G_to_C(const CTerm& t) {
  std::vector<NF> elems;
  for (const auto& k : t->kids) elems.push_back(psi1G_to_C(k));
  return theta_C(Over<NF>{t->payload, std::move(elems)});
}

inline OT psi1G_to_bhord(const CTerm& t) { return eval_nf(psi1G_to_C(t)); }

// ---------------------------------------------------------------------------------------------
// The suborder S of psi_1(G) with kappa: S -> (omega o G)(S)

// Coded naturals: 0 = cl(0) and n+1 = cl((1+X)^0 (1+n)).
inline CTerm psi_nat(std::size_t n) {
  CTerm t = make_term(gterm::zero(), {});
  for (std::size_t i = 0; i < n; ++i) t = make_term(gterm::unit(0), {t});
  return t;
}

inline std::optional<std::size_t> psi_nat_index(const CTerm& t) {
  static const Value one = gterm::unit(0);
  std::size_t n = 0;
  const CollapseNode* cur = t.get();
  while (true) {
    if (cur->payload.is_node(tag::g_sum) && cur->payload.kids.empty() && cur->kids.empty()) return n;
    if (cur->payload != one || cur->kids.size() != 1) return std::nullopt;
    ++n;
    cur = cur->kids[0].get();
  }
}

// Every top-level coefficient is a coded natural, hereditarily on the support.
inline bool goodstein_S_plus(const CTerm& t) {
  if (!t->payload.is_node(tag::g_sum)) return false;
  for (const auto& s : t->payload.kids)
    if (!psi_nat_index(t->kids[static_cast<std::size_t>(gterm::coef(s))])) return false;
  for (const auto& k : t->kids)
    if (!goodstein_S_plus(k)) return false;
  return true;
}

inline bool goodstein_S(const CTerm& t) { return goodstein_S_plus(t) && psi_valid(*goodstein(), t); }

using GSeq = std::vector<Over<CTerm>>;

// kappa+((1+X)^s0 (1+m0) + ...) = <s0 (1+m0 times), s1, ...>
inline GSeq kappa_plus(const CTerm& s) {
  const auto& g = *goodstein();
  GSeq out;
  for (const auto& x : s->payload.kids) {
    auto m = psi_nat_index(s->kids[static_cast<std::size_t>(gterm::coef(x))]);
    if (!m) throw EmbeddingError("kappa+: coefficient is not a coded natural in " + show_term(g, s));
    auto v = canonical_over(g, gterm::exp(x), s->kids);
    for (std::size_t i = 0; i <= *m; ++i) out.push_back(v);
  }
  return out;
}

// The element of psi_1^+(G) with kappa+ equal to the given weakly decreasing sequence.
inline CTerm kappa_plus_inverse(const GSeq& seq) {
  const auto& g = *goodstein();
  std::vector<CTerm> pool;
  Value shape = gterm::zero();
  for (std::size_t i = 0; i < seq.size();) {
    std::size_t j = i;
    while (j < seq.size() && value_cmp(g, seq[j], seq[i]) == 0) ++j;
    if (j < seq.size() && value_cmp(g, seq[i], seq[j]) < 0) throw EmbeddingError("kappa+: sequence not decreasing");
    auto off = static_cast<std::int64_t>(pool.size());
    pool.insert(pool.end(), seq[i].elems.begin(), seq[i].elems.end());
    Value e = g.map_elems(seq[i].shape, [&](std::int64_t k) { return k + off; });
    pool.push_back(psi_nat(j - i - 1));
    shape.kids.push_back(gterm::term(std::move(e), static_cast<std::int64_t>(pool.size() - 1)));
    i = j;
  }
  return collapse_plus(g, Over<CTerm>{std::move(shape), std::move(pool)});
}

inline const OmegaCollapse<CTerm>& goodstein_S_collapse() {
  static const OmegaCollapse<CTerm> c = [] {
    OmegaCollapse<CTerm> c;
    c.d = goodstein().get();
    c.cmp = [](const CTerm& a, const CTerm& b) { return psi_cmp(*goodstein(), a, b); };
    c.pi = kappa_plus;
    c.pi_inverse = [](const GSeq& s) -> std::optional<CTerm> {
      auto t = kappa_plus_inverse(s);
      if (!goodstein_S(t)) return std::nullopt;
      return t;
    };
    return c;
  }();
  return c;
}

// S up to the given size, ascending.
inline std::vector<CTerm> goodstein_S_terms(std::size_t bound) {
  std::vector<CTerm> out;
  for (auto& t : psi1_enumerate(*goodstein(), bound))
    if (goodstein_S(t)) out.push_back(std::move(t));
  sort_terms(*goodstein(), out);
  return out;
}

// e: C -> S with e(theta(kappa(sigma))) = Theta_S(G(e)(sigma)).
inline CTerm C_to_S(const NF& c) {
  const auto& g = *goodstein();
  auto gam = kappa_C_inverse(c_arg(c));
  std::vector<CTerm> elems;
  for (const auto& e : gam.elems) elems.push_back(C_to_S(e));
  auto sigma = canonical_over(g, gam.shape, elems);
  if (!g.valid(sigma.shape, sigma.elems.size()))
    throw EmbeddingError("C -> S: image of " + nf_show(c) + " is not a value");
  auto r = goodstein_S_collapse().theta(sigma);
  if (!r) throw EmbeddingError("C -> S: collapse undefined at " + nf_show(c));
  return *r;
}

// theta(g(sigma)) in C for sigma below Omega.
inline NF bhord_to_C(const OT& s) {
  if (!ot_below_Omega(s)) throw NotationError("expected a term below Omega: " + ot_show(s));
  return c_theta(collapse_g(omega_normalize(s)));
}

inline CTerm bhord_to_psi1G(const OT& s) { return C_to_S(bhord_to_C(s)); }

// ---------------------------------------------------------------------------------------------
// phi(omega, 0) into theta(D) for D(X) = omega^X + omega x X

inline CTerm phi_to_bh(const Phi& x) {
  const auto& d = *veblen_base();
  auto cmp = [&](const CTerm& a, const CTerm& b) { return bh_cmp(d, a, b); };
  Value shape;
  std::vector<CTerm> pool;
  switch (x->kind) {
    case PhiNode::zero:
      shape = VeblenBasePredilator::power({});
      break;
    case PhiNode::sum: {
      std::vector<std::int64_t> idx;
      for (const auto& k : x->kids) {
        idx.push_back(static_cast<std::int64_t>(pool.size()));
        pool.push_back(phi_to_bh(k));
      }
      shape = VeblenBasePredilator::power(std::move(idx));
      break;
    }
    case PhiNode::phi:
      pool.push_back(phi_to_bh(x->kids[0]));
      shape = VeblenBasePredilator::times(x->index, 0);
      break;
  }
  auto c = make_over(d, shape, pool, cmp);
  return make_term(std::move(c.shape), std::move(c.elems));
}

// ---------------------------------------------------------------------------------------------
// psi(Omega^omega): f, g on sequences and the suborder S

using PSeq = std::vector<PTerm>;

namespace detail {

inline PTerm psi_sum(PSeq::const_iterator from, PSeq::const_iterator to) {
  std::vector<PPart> parts;
  for (auto it = from; it != to; ++it) parts.push_back(PPart{0, *it});
  return std::make_shared<PNode>(PNode{std::move(parts)});
}

}  // namespace detail

// x0 + psi(x0) + ... + psi(x(n-1))
inline PTerm f_seq(const PSeq& xs) {
  if (xs.empty()) return p_zero();
  return p_add(xs[0], detail::psi_sum(xs.begin(), xs.end()));
}

// x0 + psi(x1) + ... + psi(x(n-1)); not injective.
inline PTerm f_seq_tail(const PSeq& xs) {
  if (xs.empty()) return p_zero();
  return p_add(xs[0], detail::psi_sum(xs.begin() + 1, xs.end()));
}

// psi(x0) + ... + psi(x(n-1))
inline PTerm g_seq(const PSeq& xs) { return detail::psi_sum(xs.begin(), xs.end()); }

// The preimage of x under f_seq, if any: x = y + psi(x0) + ... with y absorbing into x0.
inline std::optional<PSeq> f_seq_preimage(const PTerm& x) {
  if (x->parts.empty()) return PSeq{};
  std::size_t first0 = x->parts.size();
  while (first0 > 0 && x->parts[first0 - 1].m == 0) --first0;
  for (std::size_t start = x->parts.size(); start-- > first0;) {
    PSeq xs;
    for (std::size_t i = start; i < x->parts.size(); ++i) xs.push_back(x->parts[i].x);
    if (!p_member_psi(xs[0])) continue;
    if (p_cmp(f_seq(xs), x) == 0) return xs;
  }
  return std::nullopt;
}

inline bool pomega_S(const PTerm& s);

// Omega^(m+2) psi(s) with s in S, then Omega psi(f(t)) with t a sequence over S; nothing else.
inline bool pomega_S_plus(const PTerm& s) {
  for (const auto& p : s->parts) {
    if (p.m >= 2) {
      if (!pomega_S(p.x)) return false;
    } else if (p.m == 1) {
      auto t = f_seq_preimage(p.x);
      if (!t) return false;
      for (const auto& y : *t)
        if (!pomega_S(y)) return false;
    } else {
      return false;
    }
  }
  return true;
}

inline bool pomega_S(const PTerm& s) {
  if (!pomega_S_plus(s)) return false;
  for (const auto& p : s->parts) {
    if (p.m >= 2 && p_cmp(p.x, s) >= 0) return false;
    if (p.m == 1) {
      auto t = f_seq_preimage(p.x);
      if (!t->empty() && p_cmp((*t)[0], s) >= 0) return false;
    }
  }
  return true;
}

using DSeq = std::vector<Over<PTerm>>;

// pi(s) = <phi(m0, s0), ..., t0, ...> in (omega o D)(S).
inline DSeq pi_S(const PTerm& s) {
  const auto& d = *veblen_base();
  DSeq out;
  for (const auto& p : s->parts) {
    if (p.m >= 2) {
      out.push_back(Over<PTerm>{VeblenBasePredilator::times(p.m - 2, 0), {p.x}});
    } else {
      auto t = f_seq_preimage(p.x);
      if (p.m != 1 || !t) throw EmbeddingError("pi_S: not in S+: " + p_show(s));
      std::vector<std::int64_t> idx;
      for (std::size_t i = 0; i < t->size(); ++i) idx.push_back(static_cast<std::int64_t>(i));
      out.push_back(make_over(d, VeblenBasePredilator::power(std::move(idx)), *t, p_cmp));
    }
  }
  return out;
}

// The element of S+ with the given image under pi.
inline PTerm pi_S_inverse(const DSeq& seq) {
  std::vector<PPart> parts;
  for (const auto& v : seq) {
    if (v.shape.is_node(tag::v_times)) {
      parts.push_back(PPart{v.shape.kids[0].n + 2, v.elems.at(static_cast<std::size_t>(v.shape.kids[1].n))});
    } else {
      PSeq xs;
      for (const auto& k : v.shape.kids) xs.push_back(v.elems.at(static_cast<std::size_t>(k.n)));
      parts.push_back(PPart{1, f_seq(xs)});
    }
  }
  try {
    return p_make(std::move(parts));
  } catch (const NotationError& e) {
    throw EmbeddingError(std::string("pi_S: ") + e.what());
  }
}

inline const OmegaCollapse<PTerm>& pomega_S_collapse() {
  static const OmegaCollapse<PTerm> c = [] {
    OmegaCollapse<PTerm> c;
    c.d = veblen_base().get();
    c.cmp = [](const PTerm& a, const PTerm& b) { return p_cmp(a, b); };
    c.pi = pi_S;
    c.pi_inverse = [](const DSeq& s) -> std::optional<PTerm> {
      auto t = pi_S_inverse(s);
      if (!pomega_S(t)) return std::nullopt;
      return t;
    };
    return c;
  }();
  return c;
}

// S up to the given size, ascending.
inline std::vector<PTerm> pomega_S_terms(std::size_t bound) {
  std::vector<PTerm> out;
  for (auto& t : p_enumerate(bound, true))
    if (pomega_S(t)) out.push_back(std::move(t));
  merge_sort(out, p_cmp);
  return out;
}

// e(theta(sigma)) = Theta_S(D(e)(sigma)) on theta(D).
inline PTerm bh_to_pOmega(const CTerm& t) {
  const auto& d = *veblen_base();
  auto img = bh_initial_embed<PTerm>({t}, [&](const Value& shape, const std::vector<PTerm>& elems) {
    auto sigma = make_over(d, shape, elems, p_cmp);
    if (!d.valid(sigma.shape, sigma.elems.size()))
      throw EmbeddingError("Theta_S: D(e) does not give a value at " + d.show(shape));
    auto r = pomega_S_collapse().theta(sigma);
    if (!r) throw EmbeddingError("Theta_S undefined at " + d.show(shape));
    return r;
  });
  return *img[0];
}

inline PTerm phi_to_pOmega(const Phi& x) { return bh_to_pOmega(phi_to_bh(x)); }

// ---------------------------------------------------------------------------------------------
// psi(Omega^omega) into psi_1(W)

// x = Omega^m0 * g(sigma0) + ... with m0 > m1 > ... and every sigma_i nonempty.
inline std::vector<std::pair<std::int64_t, PSeq>> omega_groups(const PTerm& x) {
  std::vector<std::pair<std::int64_t, PSeq>> out;
  for (const auto& p : x->parts) {
    if (out.empty() || out.back().first != p.m) out.push_back({p.m, {}});
    out.back().second.push_back(p.x);
  }
  return out;
}

// pi^-1(h(x)) with h(x) = (1+X)^(2m0+2) (1 + h(sigma0_0)) + (1+X)^(2m0+1) (1 + h(f(sigma0))) + ...
inline CTerm pOmega_to_psi1W(const PTerm& x) {
  const auto& w = *weak_goodstein();
  Value shape = wterm::zero();
  std::vector<CTerm> pool;
  for (const auto& [m, sigma] : omega_groups(x)) {
    pool.push_back(pOmega_to_psi1W(sigma[0]));
    shape.kids.push_back(wterm::term(2 * m + 2, static_cast<std::int64_t>(pool.size() - 1)));
    pool.push_back(pOmega_to_psi1W(f_seq_tail(sigma)));
    shape.kids.push_back(wterm::term(2 * m + 1, static_cast<std::int64_t>(pool.size() - 1)));
  }
  try {
    return collapse(w, Over<CTerm>{std::move(shape), std::move(pool)});
  } catch (const CollapseError& e) {
    throw EmbeddingError("h: image of " + p_show(x) + " is not in the range of pi (" + e.what() + ")");
  }
}

// ---------------------------------------------------------------------------------------------
// psi_1(W) into phi(omega, 0)

inline std::vector<Phi> phi_summands(const Phi& x) {
  if (x->kind == PhiNode::zero) return {};
  if (x->kind == PhiNode::phi) return {x};
  return x->kids;
}

// Ordinal addition on normal forms: summands of a below the head of b are absorbed.
inline Phi phi_add(const Phi& a, const Phi& b) {
  auto bs = phi_summands(b);
  if (bs.empty()) return a;
  std::vector<Phi> out;
  for (const auto& s : phi_summands(a)) {
    if (phi_cmp(s, bs[0]) < 0) break;
    out.push_back(s);
  }
  out.insert(out.end(), bs.begin(), bs.end());
  return phi_sum(std::move(out));
}

inline Phi phi_one() {
  static const Phi one = phi_make(0, phi_zero());
  return one;
}

inline Phi psi1W_to_phi(const CTerm& t);

// f(0) = 0 and f(sigma + (1+X)^m (1+x)) = phi(m, f(sigma) + f(pi(x)) + 1).
inline Phi psi1W_value_to_phi(const Value& v, const std::vector<CTerm>& elems) {
  Phi acc = phi_zero();
  for (const auto& s : v.kids) {
    Phi inner = phi_add(phi_add(acc, psi1W_to_phi(elems.at(static_cast<std::size_t>(wterm::coef(s))))), phi_one());
    acc = phi_make(wterm::exp(s), inner);
  }
  return acc;
}

inline Phi psi1W_to_phi(const CTerm& t) { return psi1W_value_to_phi(t->payload, t->kids); }

// ---------------------------------------------------------------------------------------------
// Verification

inline std::vector<std::string> map_names() {
  return {"omega_normalize", "collapse_f",    "collapse_g",      "kappa_C",         "kappa_plus",
          "psi1G_to_bhord",  "bhord_to_psi1G", "phi_to_bh",      "f_seq",           "pi_S",
          "phi_to_pOmega",   "pOmega_to_psi1W", "f_seq_tail",    "psi1W_to_phi"};
}

inline std::vector<std::string> collapse_names() { return {"theta_C", "theta_S_G", "theta_S_D"}; }

inline std::vector<std::string> pair_names() { return {"psi1G-bhord", "psi1W-phi", "phi-pOmega"}; }

namespace detail {

inline std::string show_seq(const PSeq& s) {
  std::string out = "<";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + p_show(s[i]);
  return out + ">";
}

inline Ordering pseq_cmp(const PSeq& a, const PSeq& b) { return omega_power_cmp(a, b, p_cmp); }

// Weakly decreasing sequences over psi(Omega^omega) with total size at most the bound.
inline std::vector<PSeq> pomega_sequences(std::size_t bound) {
  auto pool = p_enumerate(bound, true);
  merge_sort(pool, [](const PTerm& a, const PTerm& b) { return p_cmp(b, a); });
  return weakly_decreasing_sequences(pool, bound, p_size);
}

template <class S, class F, class CmpS, class CmpT, class PrintS>
EmbeddingReport monotone_report(std::string name, std::string source, std::string target, std::size_t bound,
                                const std::vector<S>& src, F f, CmpS cs, CmpT ct, PrintS ps) {
  EmbeddingReport r;
  r.source = std::move(source);
  r.target = std::move(target);
  r.bound = bound;
  try {
    r.absorb(check_monotone(std::move(name), bound, src, f, cs, ct, ps));
  } catch (const std::exception& e) {
    r.violations.push_back(e.what());
  }
  return r;
}

}  // namespace detail

// Strict monotonicity of a named map on every enumerated source term up to the bound.
inline EmbeddingReport verify_map(const std::string& name, std::size_t bound) {
  const auto& g = *goodstein();
  const auto& w = *weak_goodstein();
  auto psi_g = [&](const CTerm& a, const CTerm& b) { return psi_cmp(g, a, b); };
  auto psi_w = [&](const CTerm& a, const CTerm& b) { return psi_cmp(w, a, b); };
  auto show_g = [&](const CTerm& t) { return show_term(g, t); };
  auto show_w = [&](const CTerm& t) { return show_term(w, t); };
  using detail::monotone_report;

  if (name == "omega_normalize")
    return monotone_report(name, "OT", "N", bound, OTSystem{}.enumerate(bound), omega_normalize, ot_cmp, nf_cmp,
                           ot_show);
  if (name == "collapse_f")
    return monotone_report(name, "N", "C", bound, NFSystem{}.enumerate(bound),
                           [](const NF& n) { return collapse_f(n); }, nf_cmp, nf_cmp, nf_show);
  if (name == "collapse_g")
    return monotone_report(name, "OT below Omega", "C", bound, OTSystem{true}.enumerate(bound), bhord_to_C, ot_cmp,
                           nf_cmp, ot_show);
  if (name == "kappa_C") {
    auto samples = values_over(g, c_terms(bound), bound, 2);
    auto cmp = [&](const Over<NF>& a, const Over<NF>& b) { return compare_over(g, a, b, nf_cmp); };
    auto show = [&](const Over<NF>& s) { return nf_show(kappa_C(s)); };
    return monotone_report(name, "G(C)", "C", bound, samples, [](const Over<NF>& s) { return kappa_C(s); }, cmp,
                           nf_cmp, show);
  }
  if (name == "kappa_plus") {
    std::vector<CTerm> src;
    for (auto& t : psi1_plus_enumerate(g, bound))
      if (goodstein_S_plus(t)) src.push_back(std::move(t));
    const auto& c = goodstein_S_collapse();
    return monotone_report(name, "S+", "(omega o G)(S+)", bound, src, kappa_plus, psi_g,
                           [&](const GSeq& a, const GSeq& b) { return c.seq_cmp(a, b); }, show_g);
  }
  if (name == "psi1G_to_bhord")
    return monotone_report(name, "psi1(G)", "OT below Omega", bound, psi1_enumerate(g, bound), psi1G_to_bhord, psi_g,
                           ot_cmp, show_g);
  if (name == "bhord_to_psi1G")
    return monotone_report(name, "OT below Omega", "psi1(G)", bound, OTSystem{true}.enumerate(bound),
                           bhord_to_psi1G, ot_cmp, psi_g, ot_show);
  if (name == "phi_to_bh") {
    const auto& d = *veblen_base();
    return monotone_report(name, "phi(omega,0)", "theta(D)", bound, phi_enumerate(bound), phi_to_bh, phi_cmp,
                           [&](const CTerm& a, const CTerm& b) { return bh_cmp(d, a, b); }, phi_show);
  }
  if (name == "f_seq")
    return monotone_report(name, "omega^psi(Omega^omega)", "psi(Omega^omega)", bound,
                           detail::pomega_sequences(bound), f_seq, detail::pseq_cmp, p_cmp, detail::show_seq);
  if (name == "pi_S") {
    const auto& c = pomega_S_collapse();
    return monotone_report(name, "S", "(omega o D)(S)", bound, pomega_S_terms(bound), pi_S, p_cmp,
                           [&](const DSeq& a, const DSeq& b) { return c.seq_cmp(a, b); }, p_show);
  }
  if (name == "phi_to_pOmega")
    return monotone_report(name, "phi(omega,0)", "psi(Omega^omega)", bound, phi_enumerate(bound), phi_to_pOmega,
                           phi_cmp, p_cmp, phi_show);
  if (name == "pOmega_to_psi1W")
    return monotone_report(name, "psi(Omega^omega)", "psi1(W)", bound, p_enumerate(bound, true), pOmega_to_psi1W,
                           p_cmp, psi_w, p_show);
  if (name == "f_seq_tail") {
    // only pairs with equal first entries are claimed
    EmbeddingReport r;
    r.source = "omega^psi(Omega^omega)";
    r.target = "psi(Omega^omega)";
    r.bound = bound;
    auto seqs = detail::pomega_sequences(bound);
    for (const auto& a : seqs)
      for (const auto& b : seqs) {
        if (a.empty() || b.empty() || p_cmp(a[0], b[0]) != 0 || detail::pseq_cmp(a, b) >= 0) continue;
        ++r.pairs;
        if (p_cmp(f_seq_tail(a), f_seq_tail(b)) >= 0 && r.violations.size() < 10)
          r.violations.push_back("f_seq_tail: " + detail::show_seq(a) + " < " + detail::show_seq(b));
      }
    r.terms = seqs.size();
    return r;
  }
  if (name == "psi1W_to_phi")
    return monotone_report(name, "psi1(W)", "phi(omega,0)", bound, psi1_enumerate(w, bound), psi1W_to_phi, psi_w,
                           phi_cmp, show_w);
  throw std::invalid_argument("unknown map: " + name);
}

// Bachmann-Howard collapse conditions (i), (ii) for a named collapse on sampled values.
inline EmbeddingReport verify_collapse(const std::string& name, std::size_t bound) {
  EmbeddingReport r;
  r.bound = bound;
  auto take = [&](const CollapseCheck& c) {
    r.terms = c.samples;
    r.pairs = c.pairs;
    r.absorb(name, c.violations);
  };
  try {
    if (name == "theta_C") {
      r.source = "G(C)";
      r.target = "C";
      const auto& g = *goodstein();
      take(bh_collapse_check(g, values_over(g, c_terms(bound), bound, 2), theta_C, nf_cmp, nf_show));
    } else if (name == "theta_S_G") {
      r.source = "G(S)";
      r.target = "S";
      const auto& g = *goodstein();
      const auto& c = goodstein_S_collapse();
      take(bh_collapse_check(
          g, values_over(g, goodstein_S_terms(bound), bound, 2),
          [&](const Over<CTerm>& s) {
            auto t = c.theta(s);
            if (!t) throw EmbeddingError("Theta_S undefined");
            return *t;
          },
          c.cmp, [&](const CTerm& t) { return show_term(g, t); }));
    } else if (name == "theta_S_D") {
      r.source = "D(S)";
      r.target = "S";
      const auto& d = *veblen_base();
      const auto& c = pomega_S_collapse();
      take(bh_collapse_check(
          d, values_over(d, pomega_S_terms(bound), bound, 2),
          [&](const Over<PTerm>& s) {
            auto t = c.theta(s);
            if (!t) throw EmbeddingError("Theta_S undefined");
            return *t;
          },
          p_cmp, p_show));
    } else {
      throw std::invalid_argument("unknown collapse: " + name);
    }
  } catch (const EmbeddingError& e) {
    r.violations.push_back(name + ": " + e.what());
  }
  return r;
}

// Both directions of an equimorphism and both round trips, each checked for strict monotonicity.
inline EmbeddingReport equimorphism_suite(const std::string& pair, std::size_t bound) {
  const auto& g = *goodstein();
  const auto& w = *weak_goodstein();
  auto psi_g = [&](const CTerm& a, const CTerm& b) { return psi_cmp(g, a, b); };
  auto psi_w = [&](const CTerm& a, const CTerm& b) { return psi_cmp(w, a, b); };
  auto show_g = [&](const CTerm& t) { return show_term(g, t); };
  auto show_w = [&](const CTerm& t) { return show_term(w, t); };
  EmbeddingReport r;
  r.bound = bound;
  auto run = [&](auto&& f) {
    try {
      r.absorb(f());
    } catch (const std::exception& e) {
      r.violations.push_back(e.what());
    }
  };
  if (pair == "psi1G-bhord") {
    r.source = "psi1(G)";
    r.target = "OT below Omega";
    auto a = psi1_enumerate(g, bound);
    auto b = OTSystem{true}.enumerate(bound);
    run([&] { return check_monotone("psi1G_to_bhord", bound, a, psi1G_to_bhord, psi_g, ot_cmp, show_g); });
    run([&] { return check_monotone("bhord_to_psi1G", bound, b, bhord_to_psi1G, ot_cmp, psi_g, ot_show); });
    run([&] {
      return check_monotone(
          "round trip psi1(G)", bound, a, [](const CTerm& t) { return bhord_to_psi1G(psi1G_to_bhord(t)); }, psi_g,
          psi_g, show_g);
    });
    run([&] {
      return check_monotone(
          "round trip OT", bound, b, [](const OT& s) { return psi1G_to_bhord(bhord_to_psi1G(s)); }, ot_cmp, ot_cmp,
          ot_show);
    });
  } else if (pair == "psi1W-phi") {
    r.source = "psi1(W)";
    r.target = "phi(omega,0)";
    auto a = psi1_enumerate(w, bound);
    auto b = phi_enumerate(bound);
    auto back = [](const Phi& x) { return pOmega_to_psi1W(phi_to_pOmega(x)); };
    run([&] { return check_monotone("psi1W_to_phi", bound, a, psi1W_to_phi, psi_w, phi_cmp, show_w); });
    run([&] { return check_monotone("phi_to_psi1W", bound, b, back, phi_cmp, psi_w, phi_show); });
    run([&] {
      return check_monotone(
          "round trip psi1(W)", bound, a, [&](const CTerm& t) { return back(psi1W_to_phi(t)); }, psi_w, psi_w,
          show_w);
    });
    run([&] {
      return check_monotone(
          "round trip phi", bound, b, [&](const Phi& x) { return psi1W_to_phi(back(x)); }, phi_cmp, phi_cmp,
          phi_show);
    });
  } else if (pair == "phi-pOmega") {
    r.source = "phi(omega,0)";
    r.target = "psi(Omega^omega)";
    auto a = phi_enumerate(bound);
    auto b = p_enumerate(bound, true);
    auto back = [](const PTerm& x) { return psi1W_to_phi(pOmega_to_psi1W(x)); };
    run([&] { return check_monotone("phi_to_pOmega", bound, a, phi_to_pOmega, phi_cmp, p_cmp, phi_show); });
    run([&] { return check_monotone("pOmega_to_phi", bound, b, back, p_cmp, phi_cmp, p_show); });
    run([&] {
      return check_monotone(
          "round trip phi", bound, a, [&](const Phi& x) { return back(phi_to_pOmega(x)); }, phi_cmp, phi_cmp,
          phi_show);
    });
    run([&] {
      return check_monotone(
          "round trip psi(Omega^omega)", bound, b, [&](const PTerm& x) { return phi_to_pOmega(back(x)); }, p_cmp,
          p_cmp, p_show);
    });
  } else {
    throw std::invalid_argument("unknown pair: " + pair);
  }
  return r;
}

}  // namespace dseq
