#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dseq/fixpoint.hpp"
#include "dseq/registry.hpp"

namespace dseq {

struct PathologyError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------------------------
// The integers as a termination point of Id with A_z = z - 1

inline std::int64_t z_value(std::int64_t z) { return z - 1; }

// x precedes y iff x lies in supp(A_y) = {y - 1}.
inline std::vector<std::int64_t> z_preceding(std::int64_t y) { return {z_value(y)}; }

inline std::uint64_t zigzag(std::int64_t z) {
  return z >= 0 ? 2 * static_cast<std::uint64_t>(z) : 2 * static_cast<std::uint64_t>(-(z + 1)) + 1;
}
inline std::int64_t unzigzag(std::uint64_t c) {
  return c % 2 == 0 ? static_cast<std::int64_t>(c / 2) : -static_cast<std::int64_t>(c / 2) - 1;
}

struct ZPointReport {
  std::int64_t lo = 0, hi = 0;
  std::size_t minimality_checks = 0;
  std::size_t cofinality_checks = 0;
  bool condition1 = true;
  bool condition2 = true;
  HeightReport height;
  std::vector<std::int64_t> descent;  // each entry precedes the one before it
  std::vector<std::string> violations;

  bool ok() const { return condition1 && condition2; }
  bool height_fails() const { return !height.terminated; }
};

// Checks (1) and (2) on the window and runs the height search from `start` on the whole of Z,
// raising the fuel until it leaves a descent of at least `descent_length` points.
inline ZPointReport z_point_check(std::int64_t lo, std::int64_t hi, std::size_t descent_length = 10,
                                  std::int64_t start = 0) {
  if (lo > hi) throw PathologyError("z window: empty interval");
  ZPointReport r;
  r.lo = lo;
  r.hi = hi;
  auto note = [&](std::string v) {
    if (r.violations.size() < 8) r.violations.push_back(std::move(v));
  };

  for (std::int64_t z = lo + 1; z <= hi; ++z) {
    if (z_value(z) >= z) {
      r.condition1 = false;
      note("(1) A_" + std::to_string(z) + " not below " + std::to_string(z));
    }
    for (std::int64_t y = lo; y < z; ++y)
      if (z_value(y) >= z_value(z)) {
        r.condition1 = false;
        note("(1) A_" + std::to_string(z) + " not above A_" + std::to_string(y));
      }
    // sigma bounds every earlier value iff sigma >= A_z
    for (std::int64_t sigma = lo - 1; sigma < z; ++sigma) {
      ++r.minimality_checks;
      bool bounds = true;
      for (std::int64_t y = lo; y < z && bounds; ++y) bounds = z_value(y) < sigma;
      if (bounds != (sigma >= z_value(z))) {
        r.condition1 = false;
        note("(1) A_" + std::to_string(z) + " not the least bound: " + std::to_string(sigma));
      }
    }
  }

  for (std::int64_t sigma = lo - 1; sigma < hi; ++sigma) {
    ++r.cofinality_checks;
    std::int64_t z = sigma + 1;
    bool least = true;
    for (std::int64_t y = lo; y < z && least; ++y) least = z_value(y) < sigma;
    if (sigma > z_value(z) || !least) {
      r.condition2 = false;
      note("(2) " + std::to_string(z) + " is not the least point bounding " + std::to_string(sigma));
    }
  }

  CodedRelation rel{[](std::uint64_t c) {
    std::vector<std::uint64_t> out;
    for (auto x : z_preceding(unzigzag(c))) out.push_back(zigzag(x));
    return out;
  }};
  for (std::size_t fuel = 10'000;; fuel *= 2) {
    r.height = synthesize_height(rel, {zigzag(start)}, fuel);
    if (r.height.terminated) {
      note("height search terminated on Z");
      break;
    }
    if (r.height.longest_descent.size() >= descent_length || fuel > (std::size_t{1} << 34)) break;
  }
  r.descent.clear();
  for (auto c : r.height.longest_descent) r.descent.push_back(unzigzag(c));
  for (std::size_t i = 1; i < r.descent.size(); ++i) {
    auto p = z_preceding(r.descent[i - 1]);
    if (std::find(p.begin(), p.end(), r.descent[i]) == p.end()) note("descent step does not precede");
  }
  return r;
}

// ---------------------------------------------------------------------------------------------
// The tree fixed point: X+ has the nodes of T and terms P(t, x, y) with pi+(P(t, x, y)) = t(x, y)
// whenever (x, y) differs from (t*<0>, t*<1>); X keeps the P-terms above both arguments.

struct XNode;
using XTerm = std::shared_ptr<const XNode>;

struct XNode {
  bool p = false;  // P(t, x, y) rather than the node t itself
  std::int64_t t = 0;
  XTerm x, y;
};

class TreeFixedPoint {
 public:
  explicit TreeFixedPoint(BinaryTree t) : d_(std::make_shared<TreePredilator>(std::move(t))) {
    for (std::size_t i = 0; i < tree().size(); ++i)
      nodes_.push_back(std::make_shared<XNode>(XNode{false, static_cast<std::int64_t>(i), nullptr, nullptr}));
  }

  const BinaryTree& tree() const { return d_->tree(); }
  const TreePredilator& predilator() const { return *d_; }
  PredPtr predilator_ptr() const { return d_; }

  XTerm node(std::int64_t t) const { return nodes_.at(static_cast<std::size_t>(t)); }

  XTerm p_term(std::int64_t t, XTerm x, XTerm y) const {
    if (t < 0 || static_cast<std::size_t>(t) >= tree().size() || tree().is_leaf(t))
      throw TreeError("P-term needs an internal node");
    if (is_children(t, x, y)) throw TreeError("P-term duplicates the node " + tree().address_string(t));
    return std::make_shared<XNode>(XNode{true, t, std::move(x), std::move(y)});
  }

  Over<XTerm> pi_plus(const XTerm& a) const {
    if (!a->p && tree().is_leaf(a->t)) return {TreePredilator::leaf(a->t), {}};
    if (!a->p) return {TreePredilator::apply(a->t, 0, 1), {node(tree().child(a->t, 0)), node(tree().child(a->t, 1))}};
    return {TreePredilator::apply(a->t, 0, 1), {a->x, a->y}};
  }

  // The inverse of pi+ on any value whose elements are X+ terms.
  XTerm pi_plus_inverse(const Over<XTerm>& v) const {
    if (v.shape.is_node(tag::tree_leaf)) return node(v.shape.kids[0].n);
    auto t = v.shape.kids[0].n;
    const auto& x = v.elems.at(static_cast<std::size_t>(v.shape.kids[1].n));
    const auto& y = v.elems.at(static_cast<std::size_t>(v.shape.kids[2].n));
    if (is_children(t, x, y)) return node(t);
    return std::make_shared<XNode>(XNode{true, t, x, y});
  }

  // Nodes of T keep the tree order; everything else is reflected through pi+.
  Ordering compare(const XTerm& a, const XTerm& b) const {
    if (a == b) return Ordering::equal;
    if (!a->p && !b->p) return tree().compare(a->t, b->t);
    return value_compare(pi_plus(a), pi_plus(b));
  }

  Ordering value_compare(const Over<XTerm>& a, const Over<XTerm>& b) const {
    return compare_over(*d_, a, b, [&](const XTerm& s, const XTerm& t) { return compare(s, t); });
  }

  // The order reflected through pi+ everywhere, nodes of T included.
  Ordering reflected_compare(const XTerm& a, const XTerm& b) const {
    auto va = pi_plus(a), vb = pi_plus(b);
    return compare_over(*d_, va, vb, [&](const XTerm& s, const XTerm& t) { return reflected_compare(s, t); });
  }

  bool same(const XTerm& a, const XTerm& b) const { return compare(a, b) == 0; }

  bool member(const XTerm& a) const {
    if (!a->p) return true;
    return member(a->x) && member(a->y) && compare(a->x, a) < 0 && compare(a->y, a) < 0;
  }

  std::size_t size(const XTerm& a) const { return a->p ? 1 + size(a->x) + size(a->y) : 1; }

  // All X+ terms of size at most `bound`, ascending.
  std::vector<XTerm> enumerate_plus(std::size_t bound) const {
    std::vector<std::vector<XTerm>> by_size(bound + 1);
    if (bound >= 1) by_size[1] = nodes_;
    for (std::size_t n = 3; n <= bound; ++n)
      for (std::size_t i = 0; i < tree().size(); ++i) {
        auto t = static_cast<std::int64_t>(i);
        if (tree().is_leaf(t)) continue;
        for (std::size_t sx = 1; sx + 1 < n; ++sx)
          for (const auto& x : by_size[sx])
            for (const auto& y : by_size[n - 1 - sx])
              if (!is_children(t, x, y)) by_size[n].push_back(std::make_shared<XNode>(XNode{true, t, x, y}));
      }
    std::vector<XTerm> out;
    for (auto& level : by_size) out.insert(out.end(), level.begin(), level.end());
    merge_sort(out, [&](const XTerm& a, const XTerm& b) { return compare(a, b); });
    return out;
  }

  std::vector<XTerm> enumerate(std::size_t bound) const {
    std::vector<XTerm> out;
    for (auto& a : enumerate_plus(bound))
      if (member(a)) out.push_back(std::move(a));
    return out;
  }

  Sexpr print(const XTerm& a) const {
    if (!a->p) return Sexpr::make_atom(tree().address_string(a->t));
    return Sexpr::make_list(
        {Sexpr::make_atom("P"), Sexpr::make_atom(tree().address_string(a->t)), print(a->x), print(a->y)});
  }
  std::string show(const XTerm& a) const { return to_string(print(a)); }

 private:
  bool is_children(std::int64_t t, const XTerm& x, const XTerm& y) const {
    return !x->p && !y->p && x->t == tree().child(t, 0) && y->t == tree().child(t, 1);
  }

  std::shared_ptr<const TreePredilator> d_;
  std::vector<XTerm> nodes_;
};

struct TreeReport {
  std::size_t tree_nodes = 0;
  std::size_t bound = 0;
  std::size_t plus_terms = 0;
  std::size_t members = 0;
  std::size_t range_values = 0;  // values of D(X) examined for the range condition
  bool order_consistent = true;  // copied tree order agrees with the reflected one
  bool bijective = true;         // pi+
  bool range_sub = true;         // supports of pi(x) lie in X below x
  bool range_sup = true;         // every value above pi of its support has a preimage in X
  bool well_founded = true;      // height synthesis on the support relation
  HeightReport height;
  std::vector<std::string> violations;

  bool ok() const { return order_consistent && bijective && range_sub && range_sup && well_founded; }
};

inline TreeReport tree_fixed_point_check(const TreeFixedPoint& fp, std::size_t bound,
                                         std::size_t fuel = 50'000'000) {
  TreeReport r;
  r.tree_nodes = fp.tree().size();
  r.bound = bound;
  auto note = [&](std::string v) {
    if (r.violations.size() < 8) r.violations.push_back(std::move(v));
  };
  const auto& tree = fp.tree();

  for (std::size_t i = 0; i < tree.size(); ++i)
    for (std::size_t j = 0; j < tree.size(); ++j) {
      auto a = fp.node(static_cast<std::int64_t>(i)), b = fp.node(static_cast<std::int64_t>(j));
      if (fp.compare(a, b) != fp.reflected_compare(a, b)) {
        r.order_consistent = false;
        note("tree order and reflected order disagree on " + fp.show(a) + ", " + fp.show(b));
      }
    }

  auto plus = fp.enumerate_plus(bound);
  r.plus_terms = plus.size();
  for (std::size_t i = 1; i < plus.size(); ++i)
    if (fp.compare(plus[i - 1], plus[i]) >= 0) {
      r.bijective = false;
      note("pi+ not injective: " + fp.show(plus[i - 1]) + " vs " + fp.show(plus[i]));
    }
  auto in_plus = [&](const XTerm& a) {
    auto it = std::lower_bound(plus.begin(), plus.end(), a,
                               [&](const XTerm& s, const XTerm& t) { return fp.compare(s, t) < 0; });
    return it != plus.end() && fp.same(*it, a);
  };

  std::vector<XTerm> xs;
  for (const auto& a : plus)
    if (fp.member(a)) xs.push_back(a);
  r.members = xs.size();

  // Every value over a pool whose preimage fits the bound, with and without the range condition.
  auto values_over = [&](const std::vector<XTerm>& all, auto&& visit) {
    std::vector<XTerm> pool;
    for (const auto& a : all)
      if (!a->p || fp.size(a) + 2 <= bound) pool.push_back(a);
    for (std::size_t i = 0; i < tree.size(); ++i) {
      auto t = static_cast<std::int64_t>(i);
      if (tree.is_leaf(t)) {
        visit(Over<XTerm>{TreePredilator::leaf(t), {}});
        continue;
      }
      for (const auto& x : pool)
        for (const auto& y : pool) {
          bool children = !x->p && !y->p && x->t == tree.child(t, 0) && y->t == tree.child(t, 1);
          if (!children && 1 + fp.size(x) + fp.size(y) > bound) continue;
          visit(Over<XTerm>{TreePredilator::apply(t, 0, 1), {x, y}});
        }
    }
  };

  values_over(plus, [&](const Over<XTerm>& v) {
    auto a = fp.pi_plus_inverse(v);
    if (!in_plus(a) || fp.value_compare(fp.pi_plus(a), v) != 0) {
      r.bijective = false;
      note("pi+ misses a value: preimage " + fp.show(a));
    }
  });

  for (const auto& a : xs)
    for (const auto& s : fp.pi_plus(a).elems)
      if (!fp.member(s) || fp.compare(s, a) >= 0) {
        r.range_sub = false;
        note("support of pi(" + fp.show(a) + ") not below it in X: " + fp.show(s));
      }

  values_over(xs, [&](const Over<XTerm>& v) {
    ++r.range_values;
    bool above = true;
    for (const auto& s : v.elems) above = above && fp.value_compare(fp.pi_plus(s), v) < 0;
    auto a = fp.pi_plus_inverse(v);
    if (above != fp.member(a)) {
      r.range_sup = false;
      note(std::string(above ? "value above its support has no preimage in X: "
                             : "preimage in X of a value not above its support: ") +
           fp.show(a));
    }
  });

  std::vector<std::vector<std::uint64_t>> preds(xs.size());
  for (std::size_t y = 0; y < xs.size(); ++y)
    for (const auto& s : fp.pi_plus(xs[y]).elems) {
      auto it = std::lower_bound(xs.begin(), xs.end(), s,
                                 [&](const XTerm& a, const XTerm& b) { return fp.compare(a, b) < 0; });
      if (it != xs.end() && fp.same(*it, s)) preds[y].push_back(static_cast<std::uint64_t>(it - xs.begin()));
    }
  std::vector<std::uint64_t> codes;
  for (std::size_t x = 0; x < xs.size(); ++x) codes.push_back(x);
  r.height = synthesize_height(CodedRelation{[&](std::uint64_t y) {
                                 return y < preds.size() ? preds[y] : std::vector<std::uint64_t>{};
                               }},
                               codes, fuel);
  if (!r.height.ok()) {
    r.well_founded = false;
    note("height synthesis: " + r.height.message);
  }
  return r;
}

// The unique homomorphism X -> psi_1(D) for the tree predilator and its inverse.
inline CTerm tree_to_canonical(const TreeFixedPoint& fp, const XTerm& a) {
  auto v = fp.pi_plus(a);
  std::vector<CTerm> elems;
  for (const auto& s : v.elems) elems.push_back(tree_to_canonical(fp, s));
  return collapse(fp.predilator(), Over<CTerm>{v.shape, elems});
}

inline XTerm tree_from_canonical(const TreeFixedPoint& fp, const CTerm& c) {
  std::vector<XTerm> elems;
  for (const auto& k : c->kids) elems.push_back(tree_from_canonical(fp, k));
  return fp.pi_plus_inverse(Over<XTerm>{c->payload, elems});
}

struct CanonicalComparison {
  std::size_t members = 0;
  std::size_t canonical = 0;
  MonotonicityReport monotone;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty() && monotone.ok(); }
};

inline CanonicalComparison compare_to_canonical(const TreeFixedPoint& fp, std::size_t bound,
                                                std::size_t canonical_bound) {
  CanonicalComparison r;
  const auto& d = fp.predilator();
  auto note = [&](std::string v) {
    if (r.violations.size() < 8) r.violations.push_back(std::move(v));
  };
  auto xs = fp.enumerate(bound);
  r.members = xs.size();
  std::vector<XTerm> mapped;
  for (const auto& a : xs) {
    try {
      auto c = tree_to_canonical(fp, a);
      if (!psi_valid(d, c)) note("image not in psi_1: " + fp.show(a));
      if (!fp.same(tree_from_canonical(fp, c), a)) note("inverse does not return " + fp.show(a));
      mapped.push_back(a);
    } catch (const CollapseError& e) {
      note(fp.show(a) + ": " + e.what());
    }
  }
  r.monotone = check_monotone(
      "tree_to_canonical", bound, mapped, [&](const XTerm& a) { return tree_to_canonical(fp, a); },
      [&](const XTerm& a, const XTerm& b) { return fp.compare(a, b); },
      [&](const CTerm& s, const CTerm& t) { return psi_cmp(d, s, t); }, [&](const XTerm& a) { return fp.show(a); });

  auto cs = psi1_enumerate(d, canonical_bound);
  r.canonical = cs.size();
  for (const auto& c : cs) {
    auto a = tree_from_canonical(fp, c);
    if (!fp.member(a)) {
      note("canonical term outside X: " + show_term(d, c));
      continue;
    }
    if (!same_term(d, tree_to_canonical(fp, a), c)) note("not a round trip: " + show_term(d, c));
  }
  return r;
}

// Every tree with at most max_nodes nodes in which each node has 0 or 2 children.
inline std::vector<BinaryTree> full_binary_trees(std::size_t max_nodes) {
  // shapes[k]: parent lists (preorder, relative to a root at 0) with k internal nodes
  std::vector<std::vector<std::vector<std::pair<std::int64_t, bool>>>> shapes;
  shapes.push_back({{{-1, true}}});
  for (std::size_t k = 1; 2 * k + 1 <= max_nodes; ++k) {
    std::vector<std::vector<std::pair<std::int64_t, bool>>> level;
    for (std::size_t a = 0; a < k; ++a)
      for (const auto& left : shapes[a])
        for (const auto& right : shapes[k - 1 - a]) {
          std::vector<std::pair<std::int64_t, bool>> nodes{{-1, false}};
          auto graft = [&](const std::vector<std::pair<std::int64_t, bool>>& sub) {
            auto off = static_cast<std::int64_t>(nodes.size());
            for (const auto& [p, leaf] : sub) nodes.emplace_back(p < 0 ? 0 : p + off, leaf);
          };
          graft(left);
          graft(right);
          level.push_back(std::move(nodes));
        }
    shapes.push_back(std::move(level));
  }
  std::vector<BinaryTree> out;
  for (const auto& level : shapes)
    for (const auto& nodes : level) out.emplace_back(nodes);
  return out;
}

// ---------------------------------------------------------------------------------------------
// psi_1(bump(D)): every element has a successor

struct SuccessorReport {
  std::string predilator;
  std::size_t bound = 0;
  std::size_t terms = 0;
  std::size_t with_successor = 0;
  std::size_t between_checks = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty() && with_successor == terms; }
};

// The term with the same tag, D-part and support, and counter one higher.
inline CTerm bump_successor(const CTerm& x) { return make_term(BumpPredilator::next(x->payload), x->kids); }

inline SuccessorReport successor_check(PredPtr d, std::size_t bound) {
  auto e = bump_combinator(std::move(d));
  SuccessorReport r;
  r.predilator = e->name();
  r.bound = bound;
  auto note = [&](std::string v) {
    if (r.violations.size() < 8) r.violations.push_back(std::move(v));
  };
  auto ts = psi1_enumerate(*e, bound);
  r.terms = ts.size();
  for (const auto& x : ts) {
    auto s = bump_successor(x);
    if (!psi_valid(*e, s) || psi_cmp(*e, x, s) >= 0 || s->kids != x->kids) {
      note("no successor for " + show_term(*e, x));
      continue;
    }
    bool clean = true;
    for (const auto& z : ts) {
      ++r.between_checks;
      if (psi_cmp(*e, x, z) < 0 && psi_cmp(*e, z, s) < 0) {
        clean = false;
        note(show_term(*e, z) + " lies between " + show_term(*e, x) + " and " + show_term(*e, s));
        break;
      }
    }
    if (clean) ++r.with_successor;
  }
  return r;
}

// ---------------------------------------------------------------------------------------------
// A second termination point of bump(D) from a descent in psi_1(D)

// f(s) = pi^-1(<0, D(f)(kappa(s)), 0>), an embedding of psi_1(D) into the first copy.
inline CTerm transport_low(const Predilator& e, const CTerm& s) {
  std::vector<CTerm> elems;
  for (const auto& k : s->kids) elems.push_back(transport_low(e, k));
  return collapse(e, Over<CTerm>{BumpPredilator::low(s->payload, 0), elems});
}

struct AltTermination {
  PredPtr d, e;
  std::vector<CTerm> descent;        // s_n in psi_1(D), strictly decreasing
  std::vector<CTerm> tau;            // pi(tau_n) = <2, D(f)(pi(s_n)), 0>
  std::vector<CTerm> points;         // g(x) for the points x of X, ascending
  std::vector<std::size_t> stratum;  // n with g(x) in X_n
  TerminationPrefix b;               // E(g|x)(B_x) = A_{g(x)}
  std::optional<std::size_t> gap;    // the point with pi(g(x)) = <1, 0>
  std::vector<std::string> errors;
};

inline void collect_subterms(const CTerm& t, std::vector<CTerm>& out) {
  out.push_back(t);
  for (const auto& k : t->kids) collect_subterms(k, out);
}

// X_0 and the strata X_1 .. X_{N-1} for a descent of length N, drawn from the terms of psi_1(E) up to
// `bound` together with the tau_n and their subterms.
inline AltTermination alt_termination_from_descent(PredPtr d, std::vector<CTerm> descent, std::size_t bound) {
  if (descent.empty()) throw PathologyError("descent: empty");
  for (const auto& s : descent)
    if (!psi_valid(*d, s)) throw PathologyError("descent: term not in psi_1(" + d->name() + ")");
  for (std::size_t i = 1; i < descent.size(); ++i)
    if (psi_cmp(*d, descent[i], descent[i - 1]) >= 0)
      throw PathologyError("descent: not strictly decreasing at position " + std::to_string(i));

  AltTermination a;
  a.d = d;
  a.e = bump_combinator(d);
  a.descent = std::move(descent);
  const Predilator& e = *a.e;
  auto cmp = [&](const CTerm& s, const CTerm& t) { return psi_cmp(e, s, t); };

  auto pool = psi1_enumerate(e, bound);
  for (const auto& s : a.descent) {
    std::vector<CTerm> elems;
    for (const auto& k : s->kids) elems.push_back(transport_low(e, k));
    a.tau.push_back(collapse(e, Over<CTerm>{BumpPredilator::high(s->payload, 0), elems}));
    collect_subterms(a.tau.back(), pool);
  }
  merge_sort(pool, cmp);
  pool.erase(std::unique(pool.begin(), pool.end(), [&](const CTerm& s, const CTerm& t) { return cmp(s, t) == 0; }),
             pool.end());

  std::vector<std::optional<std::size_t>> level(pool.size());
  auto in_earlier = [&](const CTerm& k, std::size_t n) {
    auto it = std::lower_bound(pool.begin(), pool.end(), k, [&](const CTerm& s, const CTerm& t) { return cmp(s, t) < 0; });
    if (it == pool.end() || cmp(*it, k) != 0) return false;
    auto l = level[static_cast<std::size_t>(it - pool.begin())];
    return l && *l < n;
  };
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto& p = pool[i]->payload;
    if (p.is_node(tag::bump0) || (p.is_node(tag::bump1) && p.kids[0].n == 0)) level[i] = 0;
  }
  for (std::size_t n = 1; n < a.tau.size(); ++n)
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (level[i] || !pool[i]->payload.is_node(tag::bump2) || cmp(pool[i], a.tau[n]) <= 0) continue;
      bool supported = true;
      for (const auto& k : pool[i]->kids) supported = supported && in_earlier(k, n);
      if (supported) level[i] = n;
    }

  for (std::size_t i = 0; i < pool.size(); ++i)
    if (level[i]) {
      a.points.push_back(pool[i]);
      a.stratum.push_back(*level[i]);
    }

  a.b.d = a.e;
  for (std::size_t x = 0; x < a.points.size(); ++x) {
    const auto& gx = a.points[x];
    if (gx->payload.is_node(tag::bump1)) a.gap = x;
    std::vector<std::int64_t> idx;
    for (const auto& k : gx->kids) {
      auto it = std::lower_bound(a.points.begin(), a.points.end(), k,
                                 [&](const CTerm& s, const CTerm& t) { return cmp(s, t) < 0; });
      if (it == a.points.end() || cmp(*it, k) != 0) {
        a.errors.push_back("support of " + show_term(e, gx) + " outside X");
        idx.push_back(0);
        continue;
      }
      idx.push_back(static_cast<std::int64_t>(it - a.points.begin()));
    }
    a.b.a.push_back(e.map_elems(gx->payload, [&](std::int64_t i) { return idx[static_cast<std::size_t>(i)]; }));
    a.b.weight.push_back(term_size(e, gx));
  }
  return a;
}

struct AltReport {
  std::size_t points = 0;
  std::size_t strata = 0;
  std::size_t above_gap = 0;
  std::size_t refuted = 0;         // points above the gap with a point of X strictly between
  std::size_t refuted_by_tau = 0;  // ... where tau_n itself is that point
  std::size_t at_horizon = 0;      // points of the last stratum with nothing between
  bool gap_present = false;
  bool tau_in_x = true;            // tau_n lies in X for n below the last stratum
  bool gap_successor_excluded = true;  // <1, 1> is the successor in psi_1(E) and is not in X
  MonotonicityReport transport;
  std::vector<std::string> violations;

  bool ok() const {
    return violations.empty() && gap_present && tau_in_x && gap_successor_excluded && transport.ok() &&
           refuted + at_horizon == above_gap;
  }
};

inline AltReport check_alt_termination(const AltTermination& a, std::size_t sample_bound) {
  const Predilator& e = *a.e;
  AltReport r;
  r.points = a.points.size();
  r.strata = a.tau.size();
  r.violations = a.errors;
  auto note = [&](std::string v) {
    if (r.violations.size() < 8) r.violations.push_back(std::move(v));
  };
  auto cmp = [&](const CTerm& s, const CTerm& t) { return psi_cmp(e, s, t); };
  auto index_of = [&](const CTerm& t) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < a.points.size(); ++i)
      if (cmp(a.points[i], t) == 0) return i;
    return std::nullopt;
  };

  for (std::size_t x = 0; x < a.points.size(); ++x) {
    auto idx = e.supp(a.b.a[x]);
    std::vector<CTerm> elems;
    std::vector<std::int64_t> pos(a.points.size(), -1);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] >= x) note("B_" + std::to_string(x) + " not over the points below it");
      pos[idx[k]] = static_cast<std::int64_t>(k);
      elems.push_back(a.points[idx[k]]);
    }
    Value shape = e.map_elems(a.b.a[x], [&](std::int64_t i) { return pos[static_cast<std::size_t>(i)]; });
    if (!same_term(e, collapse_plus(e, Over<CTerm>{shape, elems}), a.points[x]))
      note("E(g|x)(B_x) differs from A_g(x) at " + std::to_string(x));
  }

  for (std::size_t n = 0; n + 1 < a.tau.size(); ++n) {
    auto i = index_of(a.tau[n]);
    if (!i) {
      r.tau_in_x = false;
      note("tau_" + std::to_string(n) + " missing from X");
    }
  }

  r.gap_present = a.gap.has_value();
  if (!a.gap) {
    note("X has no point <1, 0>");
  } else {
    std::size_t g = *a.gap;
    if (a.stratum[g] != 0) note("<1, 0> not in X_0");
    auto succ = bump_successor(a.points[g]);
    if (index_of(succ)) {
      r.gap_successor_excluded = false;
      note("<1, 1> lies in X");
    }
    for (std::size_t y = g + 1; y < a.points.size(); ++y) {
      ++r.above_gap;
      std::size_t n = a.stratum[y];
      if (n == 0) note("point of X_0 above <1, 0>: " + show_term(e, a.points[y]));
      bool between = y > g + 1;
      if (between) {
        ++r.refuted;
        if (n + 1 < a.tau.size() && cmp(a.points[g], a.tau[n]) < 0 && cmp(a.tau[n], a.points[y]) < 0)
          ++r.refuted_by_tau;
      } else if (n + 1 == a.tau.size()) {
        ++r.at_horizon;
      } else {
        note("successor of <1, 0> in X below the horizon: " + show_term(e, a.points[y]));
      }
    }
  }

  auto samples = psi1_enumerate(*a.d, sample_bound);
  r.transport = check_monotone(
      "transport_low", sample_bound, samples, [&](const CTerm& s) { return transport_low(e, s); },
      [&](const CTerm& s, const CTerm& t) { return psi_cmp(*a.d, s, t); }, cmp,
      [&](const CTerm& s) { return show_term(*a.d, s); });
  return r;
}

// ---------------------------------------------------------------------------------------------
// Q without a closed unit interval, and back-and-forth between dense carriers

using Rational = boost::multiprecision::cpp_rational;

inline Rational parse_rational(std::string_view text) {
  try {
    return Rational(std::string(text));
  } catch (const std::exception&) {
    throw ParseError("not a rational: " + std::string(text));
  }
}

inline std::string show_rational(const Rational& q) { return q.str(); }

struct DenseCarrier {
  std::string name;
  std::function<bool(const Rational&)> contains;
};

inline DenseCarrier rationals_carrier() {
  return {"Q", [](const Rational&) { return true; }};
}

// Q minus [r, r + 1].
inline DenseCarrier window_carrier(const Rational& r) {
  return {"Q\\[" + show_rational(r) + "," + show_rational(Rational(r + 1)) + "]",
          [r](const Rational& q) { return q < r || q > r + 1; }};
}

// Every rational, listed by |p| + q and then by value.
class RationalListing {
 public:
  const Rational& at(std::size_t i) {
    while (items_.size() <= i) grow();
    return items_[i];
  }

 private:
  void grow() {
    ++height_;
    std::vector<Rational> fresh;
    for (std::int64_t q = 1; q <= height_; ++q) {
      std::int64_t p = height_ - q;
      if (std::gcd(p, q) != 1) continue;
      fresh.emplace_back(p, q);
      if (p != 0) fresh.emplace_back(-p, q);
    }
    std::sort(fresh.begin(), fresh.end());
    items_.insert(items_.end(), fresh.begin(), fresh.end());
  }

  std::int64_t height_ = 0;
  std::vector<Rational> items_;
};

inline std::vector<Rational> rationals_up_to(std::int64_t height) {
  RationalListing l;
  std::vector<Rational> out;
  for (std::size_t i = 0;; ++i) {
    const auto& q = l.at(i);
    auto h = abs(numerator(q)) + denominator(q);
    if (h > height) break;
    out.push_back(q);
  }
  return out;
}

// A carrier point in [q - eps, q) when q lies in the window carrier; the interval left of q is open.
inline Rational approach_from_below(const Rational& r, const Rational& q, const Rational& eps) {
  if (q < r) return q - eps / 2;
  Rational room = q - (r + 1);
  return q - (eps < room ? eps : room) / 2;
}

struct DenseReport {
  Rational r;
  std::size_t samples = 0;
  std::size_t carrier_samples = 0;
  std::size_t density_checks = 0;
  std::size_t cofinality_checks = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// (1): each carrier point q is the supremum of the carrier below it, checked against every sampled
// q' < q and a few fixed distances. (2): every sampled rational lies below a carrier point.
inline DenseReport dense_window_check(const Rational& r, std::int64_t sample_height) {
  DenseReport rep;
  rep.r = r;
  auto carrier = window_carrier(r);
  auto note = [&](std::string v) {
    if (rep.violations.size() < 8) rep.violations.push_back(std::move(v));
  };
  auto qs = rationals_up_to(sample_height);
  for (const Rational& near : {Rational(r), Rational(r + 1), Rational(r - Rational(1, 1000)),
                               Rational(r + 1 + Rational(1, 1000)), Rational(r + Rational(1, 2))})
    qs.push_back(near);
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  rep.samples = qs.size();

  std::vector<Rational> eps{Rational(1), Rational(1, 10), Rational(1, 1000), Rational(1, 1000000)};
  for (const auto& q : qs) {
    if (!carrier.contains(q)) continue;
    ++rep.carrier_samples;
    auto check = [&](const Rational& e) {
      ++rep.density_checks;
      Rational p = approach_from_below(r, q, e);
      if (!carrier.contains(p) || p >= q || q - p > e)
        note("(1) no carrier point within " + show_rational(e) + " below " + show_rational(q));
    };
    for (const auto& e : eps) check(e);
    for (const auto& lower : qs)
      if (lower < q) check(q - lower);
  }
  for (const auto& q : qs) {
    ++rep.cofinality_checks;
    Rational p = (q > r + 1 ? q : Rational(r + 1)) + 1;
    if (!carrier.contains(p) || p <= q) note("(2) no carrier point above " + show_rational(q));
  }
  return rep;
}

// A rational in the carrier for r1 but not in the one for r2.
inline std::optional<Rational> distinguishing_point(const Rational& r1, const Rational& r2) {
  if (r1 == r2) return std::nullopt;
  return r1 < r2 ? Rational(r2 + 1) : r2;
}

struct PartialIso {
  std::vector<std::pair<Rational, Rational>> pairs;  // ascending in both coordinates
  std::size_t steps = 0;
  bool stuck = false;
  std::string message;
  bool ok() const { return !stuck; }
};

// Alternately maps the first unmapped point of x (in listing order) into y and pulls back the first
// unmapped point of y, each time taking the first listed candidate in the interval cut out by the
// pairs so far.
inline PartialIso back_and_forth(const DenseCarrier& x, const DenseCarrier& y, std::size_t steps,
                                 std::size_t search_limit = 1'000'000) {
  PartialIso out;
  RationalListing listing;
  std::map<Rational, Rational> fwd, bwd;

  auto next_unmapped = [&](const DenseCarrier& c, const std::map<Rational, Rational>& used) -> std::optional<Rational> {
    for (std::size_t i = 0; i < search_limit; ++i) {
      const auto& q = listing.at(i);
      if (c.contains(q) && !used.count(q)) return q;
    }
    return std::nullopt;
  };
  auto partner = [&](const DenseCarrier& c, const std::map<Rational, Rational>& m,
                     const Rational& a) -> std::optional<Rational> {
    auto hi = m.upper_bound(a);
    std::optional<Rational> lo_b, hi_b;
    if (hi != m.end()) hi_b = hi->second;
    if (hi != m.begin()) lo_b = std::prev(hi)->second;
    for (std::size_t i = 0; i < search_limit; ++i) {
      const auto& q = listing.at(i);
      if (c.contains(q) && (!lo_b || q > *lo_b) && (!hi_b || q < *hi_b)) return q;
    }
    return std::nullopt;
  };

  for (std::size_t s = 0; s < steps; ++s) {
    bool forth = s % 2 == 0;
    const auto& from = forth ? x : y;
    const auto& to = forth ? y : x;
    auto& m = forth ? fwd : bwd;
    auto& inv = forth ? bwd : fwd;
    auto a = next_unmapped(from, m);
    std::optional<Rational> b;
    if (a) b = partner(to, m, *a);
    if (!a || !b) {
      out.stuck = true;
      out.message = std::string(forth ? "forth" : "back") + " step " + std::to_string(s) + " found no candidate within " +
                    std::to_string(search_limit) + " listed rationals";
      break;
    }
    m.emplace(*a, *b);
    inv.emplace(*b, *a);
    ++out.steps;
  }
  for (const auto& [a, b] : fwd) out.pairs.emplace_back(a, b);
  return out;
}

// Order-preserving, inside both carriers, and injective.
inline bool is_partial_isomorphism(const PartialIso& p, const DenseCarrier& x, const DenseCarrier& y) {
  for (std::size_t i = 0; i < p.pairs.size(); ++i) {
    if (!x.contains(p.pairs[i].first) || !y.contains(p.pairs[i].second)) return false;
    if (i > 0 && (p.pairs[i - 1].first >= p.pairs[i].first || p.pairs[i - 1].second >= p.pairs[i].second))
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------------------------
// const-Z: the values of a termination point enumerate Z

// A finite piece of a termination point of const-Z: ascending points with their values A_x.
struct ZPresentation {
  std::vector<std::int64_t> points;
  std::vector<std::int64_t> values;
};

// The trivial termination point on Z, B_z = z.
inline ZPresentation canonical_z(std::int64_t lo, std::int64_t hi) {
  ZPresentation p;
  for (std::int64_t z = lo; z <= hi; ++z) {
    p.points.push_back(z);
    p.values.push_back(z);
  }
  return p;
}

// Points lo .. hi + 1 with A_x = x - 1.
inline ZPresentation shifted_z(std::int64_t lo, std::int64_t hi) {
  ZPresentation p;
  for (std::int64_t x = lo; x <= hi + 1; ++x) {
    p.points.push_back(x);
    p.values.push_back(x - 1);
  }
  return p;
}

struct ZUniquenessReport {
  std::int64_t lo = 0, hi = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> map;  // x -> A_x onto the window
  std::vector<std::string> violations;
  bool isomorphism() const { return violations.empty(); }
};

// Every z in [lo, hi] is some A_x, or the least value above z breaks (1) or no value lies above z.
inline ZUniquenessReport const_z_uniqueness_demo(const ZPresentation& p, std::int64_t lo, std::int64_t hi) {
  if (p.points.size() != p.values.size()) throw PathologyError("const-Z presentation: points and values differ in length");
  for (std::size_t i = 1; i < p.points.size(); ++i)
    if (p.points[i - 1] >= p.points[i]) throw PathologyError("const-Z presentation: points not ascending");
  ZUniquenessReport r;
  r.lo = lo;
  r.hi = hi;
  for (std::size_t i = 1; i < p.values.size(); ++i)
    if (p.values[i - 1] >= p.values[i])
      r.violations.push_back("(1) A_" + std::to_string(p.points[i]) + " not above A_" + std::to_string(p.points[i - 1]));
  for (std::int64_t z = lo; z <= hi; ++z) {
    auto hit = std::find(p.values.begin(), p.values.end(), z);
    if (hit != p.values.end()) {
      r.map.emplace_back(p.points[static_cast<std::size_t>(hit - p.values.begin())], z);
      continue;
    }
    std::optional<std::size_t> least;
    for (std::size_t i = 0; i < p.values.size(); ++i)
      if (p.values[i] > z && (!least || p.values[i] < p.values[*least])) least = i;
    if (!least) {
      r.violations.push_back("(2) no value above " + std::to_string(z));
      continue;
    }
    std::int64_t smaller = p.values[*least] - 1;
    bool above_all = true;
    for (std::size_t i = 0; i < *least; ++i) above_all = above_all && p.values[i] < smaller;
    if (above_all)
      r.violations.push_back("(1) fails at " + std::to_string(p.points[*least]) + ": " + std::to_string(smaller) +
                             " is below A_x = " + std::to_string(p.values[*least]) + " and above every earlier value");
    else
      r.violations.push_back("(1) fails before " + std::to_string(p.points[*least]) + ": values not increasing");
  }
  return r;
}

}  // namespace dseq
