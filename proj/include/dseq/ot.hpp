#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dseq/order.hpp"
#include "dseq/sexpr.hpp"

namespace dseq {

struct NotationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------------------------
// OT(theta): Omega | theta(s) | w^g0 + ... + w^g(n-1) with weakly decreasing exponents.
// Sums of length one whose exponent is Omega or a theta-term are stored as that exponent.

struct OTNode;
using OT = std::shared_ptr<const OTNode>;

struct OTNode {
  enum Kind { big_omega, theta, sum };
  Kind kind = sum;
  std::vector<OT> kids;  // theta: the argument; sum: the exponents
};

inline OT ot_zero() {
  static const OT z = std::make_shared<OTNode>(OTNode{OTNode::sum, {}});
  return z;
}
inline OT ot_Omega() {
  static const OT w = std::make_shared<OTNode>(OTNode{OTNode::big_omega, {}});
  return w;
}
inline OT ot_theta(OT s) { return std::make_shared<OTNode>(OTNode{OTNode::theta, {std::move(s)}}); }

inline bool ot_is_zero(const OT& t) { return t->kind == OTNode::sum && t->kids.empty(); }
inline bool ot_is_theta(const OT& t) { return t->kind == OTNode::theta; }
inline bool ot_is_Omega(const OT& t) { return t->kind == OTNode::big_omega; }

inline bool ot_equal(const OT& a, const OT& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!ot_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

// Exponents when the term is read as a sum of powers of omega.
inline std::vector<OT> ot_exponents(const OT& t) {
  if (t->kind == OTNode::sum) return t->kids;
  return {t};
}

inline std::vector<OT> ot_E(const OT& t) {
  switch (t->kind) {
    case OTNode::big_omega:
      return {};
    case OTNode::theta:
      return {t};
    case OTNode::sum:
      break;
  }
  std::vector<OT> out;
  for (const auto& g : t->kids) {
    auto e = ot_E(g);
    for (auto& x : e) {
      bool seen = false;
      for (const auto& y : out) seen = seen || ot_equal(x, y);
      if (!seen) out.push_back(std::move(x));
    }
  }
  return out;
}

inline bool ot_less(const OT& a, const OT& b);

inline Ordering ot_cmp(const OT& a, const OT& b) {
  if (ot_equal(a, b)) return Ordering::equal;
  return ot_less(a, b) ? Ordering::less : Ordering::greater;
}

inline bool ot_less(const OT& a, const OT& b) {
  auto lt = [](const OT& x, const OT& y) { return ot_cmp(x, y) < 0; };
  auto le = [](const OT& x, const OT& y) { return ot_cmp(x, y) <= 0; };
  switch (a->kind) {
    case OTNode::big_omega:
      return b->kind == OTNode::sum && !b->kids.empty() && le(a, b->kids[0]);
    case OTNode::theta:
      switch (b->kind) {
        case OTNode::big_omega:
          return true;
        case OTNode::theta: {
          const OT& s = a->kids[0];
          const OT& t = b->kids[0];
          if (fin_subset_le(std::vector<OT>{a}, ot_E(t), ot_cmp)) return true;
          return lt(s, t) && fin_subset_lt(ot_E(s), std::vector<OT>{b}, ot_cmp);
        }
        case OTNode::sum:
          return !b->kids.empty() && le(a, b->kids[0]);
      }
      return false;
    case OTNode::sum:
      break;
  }
  if (a->kids.empty()) return !ot_is_zero(b);
  switch (b->kind) {
    case OTNode::big_omega:
      return lt(a->kids[0], b);
    case OTNode::theta:
      return lt(a->kids[0], b);
    case OTNode::sum:
      break;
  }
  return omega_power_cmp(a->kids, b->kids, ot_cmp) < 0;
}

// Builds w^e0 + ... from weakly decreasing exponents; w^Omega and w^theta(s) are the exponent itself.
inline OT ot_sum(std::vector<OT> exps) {
  if (exps.empty()) return ot_zero();
  for (std::size_t i = 1; i < exps.size(); ++i)
    if (ot_cmp(exps[i - 1], exps[i]) < 0) throw NotationError("OT sum: exponents not weakly decreasing");
  if (exps.size() == 1 && exps[0]->kind != OTNode::sum) return exps[0];
  return std::make_shared<OTNode>(OTNode{OTNode::sum, std::move(exps)});
}
inline OT ot_omega_pow(OT e) { return ot_sum({std::move(e)}); }
inline OT ot_one() { return ot_omega_pow(ot_zero()); }

inline std::size_t ot_height(const OT& t) {
  switch (t->kind) {
    case OTNode::big_omega:
      return 0;
    case OTNode::theta:
      return ot_height(t->kids[0]) + 1;
    case OTNode::sum:
      break;
  }
  std::size_t h = 0;
  for (const auto& g : t->kids) h = std::max(h, ot_height(g) + 1);
  return h;
}

// Symbols: 0 and Omega count 1, theta adds 1, every summand w^g adds 1 plus its exponent.
inline std::size_t ot_size(const OT& t) {
  switch (t->kind) {
    case OTNode::big_omega:
      return 1;
    case OTNode::theta:
      return 1 + ot_size(t->kids[0]);
    case OTNode::sum:
      break;
  }
  if (t->kids.empty()) return 1;
  std::size_t n = 0;
  for (const auto& g : t->kids) n += 1 + ot_size(g);
  return n;
}

inline bool ot_below_Omega(const OT& t) { return ot_less(t, ot_Omega()); }

inline OT ot_add(const OT& s, const OT& t) {
  auto xs = ot_exponents(s);
  if (ot_is_zero(s)) xs.clear();
  if (ot_is_zero(t)) return s;
  auto ys = ot_exponents(t);
  std::size_t keep = 0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (ot_cmp(xs[i], ys[0]) >= 0) keep = i + 1;
  xs.resize(keep);
  xs.insert(xs.end(), ys.begin(), ys.end());
  return ot_sum(std::move(xs));
}

// Omega * s
inline OT ot_omega_mul(const OT& s) {
  if (ot_is_zero(s)) return s;
  std::vector<OT> out;
  for (const auto& g : ot_exponents(s)) out.push_back(ot_add(ot_Omega(), g));
  return ot_sum(std::move(out));
}

// Omega^s * t
inline OT ot_omega_pow_mul(const OT& s, const OT& t) {
  if (ot_is_zero(t)) return t;
  OT base = ot_omega_mul(s);
  std::vector<OT> out;
  for (const auto& d : ot_exponents(t)) out.push_back(ot_add(base, d));
  return ot_sum(std::move(out));
}

inline Sexpr ot_print(const OT& t) {
  switch (t->kind) {
    case OTNode::big_omega:
      return Sexpr::make_atom("O");
    case OTNode::theta:
      return Sexpr::make_list({Sexpr::make_atom("v"), ot_print(t->kids[0])});
    case OTNode::sum:
      break;
  }
  if (t->kids.empty()) return Sexpr::make_atom("0");
  std::vector<Sexpr> items{Sexpr::make_atom("+")};
  for (const auto& g : t->kids) items.push_back(Sexpr::make_list({Sexpr::make_atom("w"), ot_print(g)}));
  return Sexpr::make_list(std::move(items));
}
inline std::string ot_show(const OT& t) { return to_string(ot_print(t)); }

inline OT ot_parse(const Sexpr& e) {
  if (e.is_atom("O")) return ot_Omega();
  if (e.is_atom("0")) return ot_zero();
  if (e.headed("v") && e.arity() == 2) return ot_theta(ot_parse(e.items[1]));
  if (e.headed("+")) {
    std::vector<OT> exps;
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      const auto& w = e.items[i];
      if (!w.headed("w") || w.arity() != 2) throw ParseError("OT: summand must be (w T)");
      exps.push_back(ot_parse(w.items[1]));
    }
    try {
      return ot_sum(std::move(exps));
    } catch (const NotationError& err) {
      throw ParseError(err.what());
    }
  }
  throw ParseError("OT: expected O, 0, (v T) or (+ (w T) ...), got " + to_string(e));
}
inline OT ot_parse(std::string_view text) { return ot_parse(parse_sexpr(text)); }

// All terms of size at most `bound`, by size and then by order.
inline std::vector<OT> ot_enumerate(std::size_t bound) {
  std::vector<std::vector<OT>> by_size(bound + 1);
  if (bound >= 1) by_size[1] = {ot_zero(), ot_Omega()};
  for (std::size_t k = 2; k <= bound; ++k) {
    for (const auto& s : by_size[k - 1]) by_size[k].push_back(ot_theta(s));
    std::vector<OT> pool;
    for (std::size_t j = 1; j < k; ++j) pool.insert(pool.end(), by_size[j].begin(), by_size[j].end());
    merge_sort(pool, [](const OT& a, const OT& b) { return ot_cmp(b, a); });
    auto seqs = weakly_decreasing_sequences(pool, k, [](const OT& g) { return 1 + ot_size(g); });
    for (auto& seq : seqs) {
      if (seq.empty()) continue;
      if (seq.size() == 1 && seq[0]->kind != OTNode::sum) continue;
      std::size_t n = 0;
      for (const auto& g : seq) n += 1 + ot_size(g);
      if (n != k) continue;
      by_size[k].push_back(std::make_shared<OTNode>(OTNode{OTNode::sum, std::move(seq)}));
    }
  }
  std::vector<OT> out;
  for (auto& level : by_size) {
    merge_sort(level, ot_cmp);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

struct OTSystem {
  using term_type = OT;
  // Restrict to the terms below Omega.
  bool below_Omega = false;

  Ordering compare(const OT& a, const OT& b) const { return ot_cmp(a, b); }
  std::size_t size(const OT& t) const { return ot_size(t); }
  std::vector<OT> enumerate(std::size_t bound) const {
    auto all = ot_enumerate(bound);
    if (!below_Omega) return all;
    std::vector<OT> out;
    for (auto& t : all)
      if (ot_below_Omega(t)) out.push_back(std::move(t));
    return out;
  }
  Sexpr print(const OT& t) const { return ot_print(t); }
  OT parse(const Sexpr& e) const {
    auto t = ot_parse(e);
    if (below_Omega && !ot_below_Omega(t)) throw ParseError("term not below Omega");
    return t;
  }
};

// ---------------------------------------------------------------------------------------------
// Omega-normal forms: Omega^g0 * d0 + ... with strictly decreasing normal exponents and coefficients
// 0 < d < Omega. Coefficients are omega-sums of coefficients or theta-terms over normal forms.

struct NFNode;
struct CoefNode;
using NF = std::shared_ptr<const NFNode>;
using Coef = std::shared_ptr<const CoefNode>;

struct NFNode {
  std::vector<std::pair<NF, Coef>> parts;
};
struct CoefNode {
  NF arg;                  // set for theta(arg)
  std::vector<Coef> exps;  // otherwise w^e0 + ...
  bool is_theta() const { return arg != nullptr; }
};

inline NF nf_zero() {
  static const NF z = std::make_shared<NFNode>();
  return z;
}
inline NF nf_make(std::vector<std::pair<NF, Coef>> parts) {
  return std::make_shared<NFNode>(NFNode{std::move(parts)});
}
inline Coef coef_theta(NF arg) { return std::make_shared<CoefNode>(CoefNode{std::move(arg), {}}); }
inline Coef coef_sum(std::vector<Coef> exps) {
  if (exps.size() == 1 && exps[0]->is_theta()) return exps[0];
  return std::make_shared<CoefNode>(CoefNode{nullptr, std::move(exps)});
}
inline bool coef_is_zero(const Coef& c) { return !c->is_theta() && c->exps.empty(); }

inline bool nf_equal(const NF& a, const NF& b);
inline bool coef_equal(const Coef& a, const Coef& b) {
  if (a == b) return true;
  if (a->is_theta() != b->is_theta()) return false;
  if (a->is_theta()) return nf_equal(a->arg, b->arg);
  if (a->exps.size() != b->exps.size()) return false;
  for (std::size_t i = 0; i < a->exps.size(); ++i)
    if (!coef_equal(a->exps[i], b->exps[i])) return false;
  return true;
}
inline bool nf_equal(const NF& a, const NF& b) {
  if (a == b) return true;
  if (a->parts.size() != b->parts.size()) return false;
  for (std::size_t i = 0; i < a->parts.size(); ++i)
    if (!nf_equal(a->parts[i].first, b->parts[i].first) || !coef_equal(a->parts[i].second, b->parts[i].second))
      return false;
  return true;
}

inline OT eval_nf(const NF& n);
inline OT eval_coef(const Coef& c) {
  if (c->is_theta()) return ot_theta(eval_nf(c->arg));
  std::vector<OT> exps;
  for (const auto& e : c->exps) exps.push_back(eval_coef(e));
  return ot_sum(std::move(exps));
}
inline OT eval_nf(const NF& n) {
  OT out = ot_zero();
  for (const auto& [g, d] : n->parts) out = ot_add(out, ot_omega_pow_mul(eval_nf(g), eval_coef(d)));
  return out;
}

inline Ordering nf_cmp(const NF& a, const NF& b) { return ot_cmp(eval_nf(a), eval_nf(b)); }

namespace detail {

// g >= Omega written as Omega + d.
inline OT split_Omega(const OT& g) {
  if (ot_is_Omega(g)) return ot_zero();
  if (g->kind == OTNode::sum && ot_is_Omega(g->kids[0]))
    return ot_sum(std::vector<OT>(g->kids.begin() + 1, g->kids.end()));
  return g;
}

}  // namespace detail

inline NF omega_normalize(const OT& s);

inline Coef to_coef(const OT& t) {
  if (ot_is_theta(t)) return coef_theta(omega_normalize(t->kids[0]));
  if (ot_is_Omega(t)) throw NotationError("coefficient must lie below Omega");
  std::vector<Coef> exps;
  for (const auto& g : t->kids) exps.push_back(to_coef(g));
  return coef_sum(std::move(exps));
}

inline NF omega_normalize(const OT& s) {
  if (ot_is_zero(s)) return nf_zero();
  if (ot_below_Omega(s)) return nf_make({{nf_zero(), to_coef(s)}});
  // w^r = Omega^d * w^e for r = Omega*d + e >= Omega; exponents below Omega go to Omega^0.
  std::vector<std::pair<OT, std::vector<OT>>> groups;
  for (const auto& r : ot_exponents(s)) {
    OT d = ot_zero();
    OT e = r;
    if (!ot_below_Omega(r)) {
      auto rs = ot_exponents(r);
      std::vector<OT> ds, es;
      for (const auto& x : rs) {
        if (es.empty() && !ot_below_Omega(x))
          ds.push_back(detail::split_Omega(x));
        else
          es.push_back(x);
      }
      d = ot_sum(std::move(ds));
      e = ot_sum(std::move(es));
    }
    if (!groups.empty() && ot_equal(groups.back().first, d))
      groups.back().second.push_back(e);
    else
      groups.push_back({d, {e}});
  }
  std::vector<std::pair<NF, Coef>> parts;
  for (auto& [d, es] : groups) parts.emplace_back(omega_normalize(d), to_coef(ot_sum(std::move(es))));
  return nf_make(std::move(parts));
}

inline bool nf_valid(const NF& n);
inline bool coef_valid(const Coef& c) {
  if (c->is_theta()) return nf_valid(c->arg);
  if (c->exps.size() == 1 && c->exps[0]->is_theta()) return false;
  for (std::size_t i = 0; i < c->exps.size(); ++i) {
    if (!coef_valid(c->exps[i])) return false;
    if (i > 0 && ot_cmp(eval_coef(c->exps[i - 1]), eval_coef(c->exps[i])) < 0) return false;
  }
  return ot_below_Omega(eval_coef(c));
}
inline bool nf_valid(const NF& n) {
  for (std::size_t i = 0; i < n->parts.size(); ++i) {
    const auto& [g, d] = n->parts[i];
    if (!nf_valid(g) || !coef_valid(d) || coef_is_zero(d)) return false;
    if (i > 0 && nf_cmp(n->parts[i - 1].first, g) <= 0) return false;
  }
  return true;
}

// Collapsed coefficients: every coefficient, hereditarily, is a theta-term.
inline bool nf_collapsed(const NF& n) {
  if (!nf_valid(n)) return false;
  for (const auto& [g, d] : n->parts)
    if (!d->is_theta() || !nf_collapsed(g) || !nf_collapsed(d->arg)) return false;
  return true;
}

// Coded naturals: 0 and (n+1) = Omega^0 * theta(n).
inline NF nf_nat(std::size_t n) {
  NF out = nf_zero();
  for (std::size_t i = 0; i < n; ++i) out = nf_make({{nf_zero(), coef_theta(out)}});
  return out;
}

inline NF collapse_f(const NF& s);

// Defined on terms below Omega, given as their coefficient.
inline NF collapse_g(const Coef& d) {
  if (coef_is_zero(d)) return nf_zero();
  if (d->is_theta()) return nf_make({{nf_nat(2), coef_theta(collapse_f(d->arg))}});
  Coef head = d->exps[0];
  Coef rest = coef_sum(std::vector<Coef>(d->exps.begin() + 1, d->exps.end()));
  return nf_make({{nf_nat(1), coef_theta(collapse_g(head))}, {nf_nat(0), coef_theta(collapse_g(rest))}});
}

inline NF collapse_g(const NF& s) {
  if (s->parts.empty()) return nf_zero();
  if (s->parts.size() != 1 || !s->parts[0].first->parts.empty())
    throw NotationError("g: argument is not below Omega");
  return collapse_g(s->parts[0].second);
}

inline NF collapse_f(const NF& s) {
  if (s->parts.empty()) return nf_make({{nf_nat(3), coef_theta(nf_nat(0))}});
  std::vector<std::pair<NF, Coef>> parts;
  for (const auto& [g, d] : s->parts) parts.emplace_back(collapse_f(g), coef_theta(collapse_g(d)));
  return nf_make(std::move(parts));
}

inline Sexpr nf_print(const NF& n);
inline Sexpr coef_print(const Coef& c) {
  if (c->is_theta()) return Sexpr::make_list({Sexpr::make_atom("v"), nf_print(c->arg)});
  if (c->exps.empty()) return Sexpr::make_atom("0");
  std::vector<Sexpr> items{Sexpr::make_atom("+")};
  for (const auto& e : c->exps) items.push_back(Sexpr::make_list({Sexpr::make_atom("w"), coef_print(e)}));
  return Sexpr::make_list(std::move(items));
}
// (N (* exponent coefficient) ...)
inline Sexpr nf_print(const NF& n) {
  std::vector<Sexpr> items{Sexpr::make_atom("N")};
  for (const auto& [g, d] : n->parts)
    items.push_back(Sexpr::make_list({Sexpr::make_atom("*"), nf_print(g), coef_print(d)}));
  return Sexpr::make_list(std::move(items));
}
inline std::string nf_show(const NF& n) { return to_string(nf_print(n)); }

inline NF nf_parse(const Sexpr& e);
inline Coef coef_parse(const Sexpr& e) {
  if (e.is_atom("0")) return coef_sum({});
  if (e.headed("v") && e.arity() == 2) return coef_theta(nf_parse(e.items[1]));
  if (e.headed("+")) {
    std::vector<Coef> exps;
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      if (!e.items[i].headed("w") || e.items[i].arity() != 2) throw ParseError("coefficient summand must be (w C)");
      exps.push_back(coef_parse(e.items[i].items[1]));
    }
    return coef_sum(std::move(exps));
  }
  throw ParseError("coefficient: expected 0, (v N) or (+ (w C) ...), got " + to_string(e));
}
inline NF nf_parse(const Sexpr& e) {
  if (!e.headed("N")) throw ParseError("normal form must be (N (* E C) ...), got " + to_string(e));
  std::vector<std::pair<NF, Coef>> parts;
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    const auto& p = e.items[i];
    if (!p.headed("*") || p.arity() != 3) throw ParseError("normal form part must be (* E C)");
    parts.emplace_back(nf_parse(p.items[1]), coef_parse(p.items[2]));
  }
  NF n = nf_make(std::move(parts));
  if (!nf_valid(n)) throw ParseError("not an Omega-normal form: " + to_string(e));
  return n;
}
inline NF nf_parse(std::string_view text) { return nf_parse(parse_sexpr(text)); }

// Normal forms of the OT terms up to a size bound; `collapsed` keeps only collapsed-coefficient forms.
struct NFSystem {
  using term_type = NF;
  bool collapsed = false;

  Ordering compare(const NF& a, const NF& b) const { return nf_cmp(a, b); }
  std::size_t size(const NF& n) const { return ot_size(eval_nf(n)); }
  std::vector<NF> enumerate(std::size_t bound) const {
    std::vector<NF> out;
    for (const auto& t : ot_enumerate(bound)) {
      NF n = omega_normalize(t);
      if (!collapsed || nf_collapsed(n)) out.push_back(std::move(n));
    }
    return out;
  }
  Sexpr print(const NF& n) const { return nf_print(n); }
  NF parse(const Sexpr& e) const {
    NF n = nf_parse(e);
    if (collapsed && !nf_collapsed(n)) throw ParseError("coefficients not collapsed");
    return n;
  }
};

// ---------------------------------------------------------------------------------------------
// Checks (a)-(g) for the coefficient collapse on the normal forms of the given OT terms.

struct PropertyCount {
  std::string name;
  std::size_t checked = 0;
  std::vector<std::string> violations;
};

struct CollapseProperties {
  std::vector<PropertyCount> props;
  bool ok() const {
    for (const auto& p : props)
      if (!p.violations.empty()) return false;
    return true;
  }
};

inline CollapseProperties collapse_properties(const std::vector<OT>& terms, std::size_t max_violations = 5) {
  struct Item {
    NF nf;
    OT val;
    std::vector<OT> E;
    OT theta;  // theta(s)
    OT f;
    std::vector<OT> Ef;
    OT theta_f;  // theta(f(s))
    bool small = false;
    OT g;
    std::vector<OT> Eg;
    OT theta_g;  // theta(g(s))
  };
  std::vector<Item> items;
  for (const auto& t : terms) {
    Item it;
    it.nf = omega_normalize(t);
    it.val = eval_nf(it.nf);
    it.E = ot_E(it.val);
    it.theta = ot_theta(it.val);
    it.f = eval_nf(collapse_f(it.nf));
    it.Ef = ot_E(it.f);
    it.theta_f = ot_theta(it.f);
    it.small = ot_below_Omega(it.val);
    if (it.small) {
      it.g = eval_nf(collapse_g(it.nf));
      it.Eg = ot_E(it.g);
      it.theta_g = ot_theta(it.g);
    }
    items.push_back(std::move(it));
  }
  CollapseProperties r;
  for (const char* n : {"a", "b", "c", "d", "e", "f", "g"}) r.props.push_back({n, 0, {}});
  auto one = [](const OT& x) { return std::vector<OT>{x}; };
  auto record = [&](std::size_t k, bool holds, const Item& s, const Item& t) {
    auto& p = r.props[k];
    ++p.checked;
    if (!holds && p.violations.size() < max_violations)
      p.violations.push_back(ot_show(s.val) + " / " + ot_show(t.val));
  };
  for (const auto& s : items)
    for (const auto& t : items) {
      bool lt = ot_cmp(s.val, t.val) < 0;
      if (s.small && t.small && lt) record(0, ot_cmp(s.theta_g, t.theta_g) < 0, s, t);
      if (lt) record(1, ot_cmp(s.f, t.f) < 0, s, t);
      bool e_below = fin_subset_lt(s.E, one(t.theta), ot_cmp);
      if (s.small && e_below) record(2, fin_subset_lt(s.Eg, one(t.theta_f), ot_cmp), s, t);
      if (e_below) record(3, fin_subset_lt(s.Ef, one(t.theta_f), ot_cmp), s, t);
      bool theta_in = fin_subset_le(one(s.theta), t.E, ot_cmp);
      if (t.small && theta_in) record(4, fin_subset_le(one(s.theta_f), t.Eg, ot_cmp), s, t);
      if (theta_in) record(5, fin_subset_le(one(s.theta_f), t.Ef, ot_cmp), s, t);
      if (ot_cmp(s.theta, t.theta) < 0) record(6, ot_cmp(s.theta_f, t.theta_f) < 0, s, t);
    }
  return r;
}

}  // namespace dseq
