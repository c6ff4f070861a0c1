#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dseq/order.hpp"
#include "dseq/ot.hpp"
#include "dseq/sexpr.hpp"

namespace dseq {

// phi(omega, 0): 0 | x0 + ... + x(n-1) (n > 1, weakly decreasing indecomposables) | phi(n, x) with h(x) <= n.

struct PhiNode;
using Phi = std::shared_ptr<const PhiNode>;

struct PhiNode {
  enum Kind { zero, sum, phi };
  Kind kind = zero;
  std::int64_t index = 0;  // n in phi(n, x)
  std::vector<Phi> kids;   // phi: {x}; sum: the summands
};

inline Phi phi_zero() {
  static const Phi z = std::make_shared<PhiNode>();
  return z;
}

inline std::int64_t phi_head(const Phi& t) { return t->kind == PhiNode::phi ? t->index : 0; }

inline Phi phi_make(std::int64_t n, Phi x) {
  if (n < 0) throw NotationError("phi: negative index");
  if (phi_head(x) > n) throw NotationError("phi: head of argument exceeds index");
  return std::make_shared<PhiNode>(PhiNode{PhiNode::phi, n, {std::move(x)}});
}

inline bool phi_equal(const Phi& a, const Phi& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->index != b->index || a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!phi_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

inline bool phi_less(const Phi& a, const Phi& b);

inline Ordering phi_cmp(const Phi& a, const Phi& b) {
  if (phi_equal(a, b)) return Ordering::equal;
  return phi_less(a, b) ? Ordering::less : Ordering::greater;
}

inline bool phi_less(const Phi& a, const Phi& b) {
  if (a->kind == PhiNode::zero) return b->kind != PhiNode::zero;
  if (b->kind == PhiNode::zero) return false;
  if (a->kind == PhiNode::sum) {
    if (b->kind == PhiNode::sum) return omega_power_cmp(a->kids, b->kids, phi_cmp) < 0;
    return phi_cmp(a->kids[0], b) < 0;
  }
  if (b->kind == PhiNode::sum) return phi_cmp(a, b->kids[0]) <= 0;
  const Phi& x = a->kids[0];
  const Phi& y = b->kids[0];
  if (a->index < b->index) return phi_cmp(x, b) < 0;
  if (a->index == b->index) return phi_cmp(x, y) < 0;
  return phi_cmp(a, y) < 0;
}

// Sum of weakly decreasing indecomposables; a single summand is returned as is.
inline Phi phi_sum(std::vector<Phi> xs) {
  if (xs.empty()) return phi_zero();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i]->kind != PhiNode::phi) throw NotationError("phi sum: summand is not indecomposable");
    if (i > 0 && phi_cmp(xs[i - 1], xs[i]) < 0) throw NotationError("phi sum: summands not weakly decreasing");
  }
  if (xs.size() == 1) return xs[0];
  return std::make_shared<PhiNode>(PhiNode{PhiNode::sum, 0, std::move(xs)});
}

// 0 counts 1, phi(n, x) counts 1 + n + |x|, a sum counts its summands.
inline std::size_t phi_size(const Phi& t) {
  switch (t->kind) {
    case PhiNode::zero:
      return 1;
    case PhiNode::phi:
      return 1 + static_cast<std::size_t>(t->index) + phi_size(t->kids[0]);
    case PhiNode::sum:
      break;
  }
  std::size_t n = 0;
  for (const auto& x : t->kids) n += phi_size(x);
  return n;
}

inline std::size_t phi_height(const Phi& t) {
  std::size_t h = 0;
  for (const auto& x : t->kids) h = std::max(h, phi_height(x) + 1);
  return h;
}

inline void phi_strict_subterms(const Phi& t, std::vector<Phi>& out) {
  for (const auto& x : t->kids) {
    out.push_back(x);
    phi_strict_subterms(x, out);
  }
}

inline Sexpr phi_print(const Phi& t) {
  switch (t->kind) {
    case PhiNode::zero:
      return Sexpr::make_atom("0");
    case PhiNode::phi:
      return Sexpr::make_list({Sexpr::make_atom("p"), Sexpr::number(t->index), phi_print(t->kids[0])});
    case PhiNode::sum:
      break;
  }
  std::vector<Sexpr> items{Sexpr::make_atom("+")};
  for (const auto& x : t->kids) items.push_back(phi_print(x));
  return Sexpr::make_list(std::move(items));
}
inline std::string phi_show(const Phi& t) { return to_string(phi_print(t)); }

inline Phi phi_parse(const Sexpr& e) {
  try {
    if (e.is_atom("0")) return phi_zero();
    if (e.headed("p") && e.arity() == 3) return phi_make(e.items[1].as_int(), phi_parse(e.items[2]));
    if (e.headed("+")) {
      std::vector<Phi> xs;
      for (std::size_t i = 1; i < e.items.size(); ++i) xs.push_back(phi_parse(e.items[i]));
      return phi_sum(std::move(xs));
    }
  } catch (const NotationError& err) {
    throw ParseError(err.what());
  }
  throw ParseError("phi: expected 0, (p n T) or (+ T ...), got " + to_string(e));
}
inline Phi phi_parse(std::string_view text) { return phi_parse(parse_sexpr(text)); }

inline std::vector<Phi> phi_enumerate(std::size_t bound) {
  std::vector<Phi> out;
  if (bound == 0) return out;
  out.push_back(phi_zero());
  if (bound == 1) return out;
  auto sub = phi_enumerate(bound - 1);
  std::vector<Phi> heads;
  for (const auto& x : sub) {
    std::size_t sx = phi_size(x);
    for (std::int64_t n = phi_head(x); 1 + static_cast<std::size_t>(n) + sx <= bound; ++n)
      heads.push_back(phi_make(n, x));
  }
  out.insert(out.end(), heads.begin(), heads.end());
  merge_sort(heads, [](const Phi& a, const Phi& b) { return phi_cmp(b, a); });
  for (auto& seq : weakly_decreasing_sequences(heads, bound, phi_size))
    if (seq.size() > 1) out.push_back(std::make_shared<PhiNode>(PhiNode{PhiNode::sum, 0, std::move(seq)}));
  merge_sort(out, [](const Phi& a, const Phi& b) {
    auto sa = phi_size(a), sb = phi_size(b);
    if (sa != sb) return sa <=> sb;
    return phi_cmp(a, b);
  });
  return out;
}

struct PhiSystem {
  using term_type = Phi;
  Ordering compare(const Phi& a, const Phi& b) const { return phi_cmp(a, b); }
  std::size_t size(const Phi& t) const { return phi_size(t); }
  std::vector<Phi> enumerate(std::size_t bound) const { return phi_enumerate(bound); }
  Sexpr print(const Phi& t) const { return phi_print(t); }
  Phi parse(const Sexpr& e) const { return phi_parse(e); }
};

struct SubtermReport {
  std::size_t terms = 0;
  std::size_t checked = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// x <= y and y a strict subterm of z imply x < z.
inline SubtermReport phi_subterm_check(const std::vector<Phi>& terms, std::size_t max_violations = 5) {
  SubtermReport r;
  r.terms = terms.size();
  for (const auto& z : terms) {
    std::vector<Phi> subs;
    phi_strict_subterms(z, subs);
    for (const auto& y : subs)
      for (const auto& x : terms) {
        if (phi_cmp(x, y) > 0) continue;
        ++r.checked;
        if (phi_cmp(x, z) >= 0 && r.violations.size() < max_violations)
          r.violations.push_back(phi_show(x) + " <= " + phi_show(y) + " inside " + phi_show(z));
      }
  }
  return r;
}

}  // namespace dseq
