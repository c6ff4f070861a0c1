#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dseq/order.hpp"
#include "dseq/predilator.hpp"
#include "dseq/termination.hpp"

namespace dseq {

struct CollapseNode;
using CTerm = std::shared_ptr<const CollapseNode>;

// A term t with pi(t) = (alpha, payload), where the payload is a D-value over the finite order of
// the children: element i of the payload is kids[i]. Children are strictly increasing and form
// exactly the support of the payload.
struct CollapseNode {
  Value payload;
  std::vector<CTerm> kids;
  std::int64_t alpha = 0;
};

struct CollapseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline CTerm make_term(Value payload, std::vector<CTerm> kids, std::int64_t alpha = 0) {
  return std::make_shared<const CollapseNode>(CollapseNode{std::move(payload), std::move(kids), alpha});
}

// Order of psi_1^+(D): pi^+ reflects the order of D on payloads, with children compared recursively.
inline Ordering psi_cmp(const Predilator& d, const CTerm& s, const CTerm& t) {
  if (s == t) return Ordering::equal;
  if (s->alpha != t->alpha) return s->alpha <=> t->alpha;
  return d.compare(s->payload, t->payload, [&](std::int64_t i, std::int64_t j) {
    return psi_cmp(d, s->kids[static_cast<std::size_t>(i)], t->kids[static_cast<std::size_t>(j)]);
  });
}

inline bool same_term(const Predilator& d, const CTerm& s, const CTerm& t) { return psi_cmp(d, s, t) == 0; }

inline std::size_t term_size(const Predilator& d, const CTerm& t) {
  std::size_t n = d.size(t->payload);
  for (const auto& k : t->kids) n += term_size(d, k);
  return n;
}

inline std::size_t term_depth(const CTerm& t) {
  std::size_t h = 0;
  for (const auto& k : t->kids) h = std::max(h, term_depth(k) + 1);
  return h;
}

inline Sexpr print_term(const Predilator& d, const CTerm& t) {
  return Sexpr::make_list({Sexpr::make_atom("cl"), d.print(t->payload, [&](std::int64_t i) {
                             return print_term(d, t->kids[static_cast<std::size_t>(i)]);
                           })});
}

inline std::string show_term(const Predilator& d, const CTerm& t) { return to_string(print_term(d, t)); }

// pi(t) as a value over its children.
inline Over<CTerm> pi(const CTerm& t) { return Over<CTerm>{t->payload, t->kids}; }

inline Ordering value_cmp(const Predilator& d, const Over<CTerm>& a, const Over<CTerm>& b) {
  return compare_over(d, a, b, [&](const CTerm& s, const CTerm& t) { return psi_cmp(d, s, t); });
}

// Canonical form of a value whose elements index an arbitrary list of terms.
inline Over<CTerm> canonical_over(const Predilator& d, const Value& shape, const std::vector<CTerm>& pool) {
  return make_over(d, shape, pool, [&](const CTerm& s, const CTerm& t) { return psi_cmp(d, s, t); });
}

// pi^+ inverse: the term with the given value, without any range condition.
inline CTerm collapse_plus(const Predilator& d, const Over<CTerm>& sigma, std::int64_t alpha = 0) {
  auto c = canonical_over(d, sigma.shape, sigma.elems);
  return make_term(std::move(c.shape), std::move(c.elems), alpha);
}

// G_0(tau) = { pi(s) | s in supp(tau) }.
inline std::vector<Over<CTerm>> g0(const Over<CTerm>& tau) {
  std::vector<Over<CTerm>> out;
  for (const auto& s : tau.elems) out.push_back(pi(s));
  return out;
}

inline bool fin_below(const Predilator& d, const std::vector<Over<CTerm>>& ys, const Over<CTerm>& tau) {
  for (const auto& y : ys)
    if (value_cmp(d, y, tau) >= 0) return false;
  return true;
}

namespace detail {

inline void add_value(const Predilator& d, std::vector<Over<CTerm>>& out, Over<CTerm> v) {
  for (const auto& w : out)
    if (value_cmp(d, w, v) == 0) return;
  out.push_back(std::move(v));
}

inline void g_nu_into(const Predilator& d, std::int64_t gamma, const Over<CTerm>& tau, std::size_t depth,
                      std::vector<Over<CTerm>>& out);

inline void g_nu_term_into(const Predilator& d, std::int64_t gamma, const CTerm& t, std::size_t depth,
                           std::vector<Over<CTerm>>& out) {
  if (t->alpha < gamma) return;
  add_value(d, out, pi(t));
  g_nu_into(d, gamma, pi(t), depth, out);
}

inline void g_nu_into(const Predilator& d, std::int64_t gamma, const Over<CTerm>& tau, std::size_t depth,
                      std::vector<Over<CTerm>>& out) {
  if (depth == 0) throw CollapseError("G_gamma: recursion exceeds the declared height");
  for (const auto& s : tau.elems) g_nu_term_into(d, gamma, s, depth - 1, out);
}

}  // namespace detail

inline constexpr std::size_t default_max_depth = 4096;

// G_gamma(tau) for a collapse over a finite nu.
inline std::vector<Over<CTerm>> g_nu(const Predilator& d, std::int64_t gamma, const Over<CTerm>& tau,
                                     std::size_t max_depth = default_max_depth) {
  std::vector<Over<CTerm>> out;
  detail::g_nu_into(d, gamma, tau, max_depth, out);
  return out;
}

// G^D_gamma(t).
inline std::vector<Over<CTerm>> g_nu_term(const Predilator& d, std::int64_t gamma, const CTerm& t,
                                          std::size_t max_depth = default_max_depth) {
  std::vector<Over<CTerm>> out;
  detail::g_nu_term_into(d, gamma, t, max_depth, out);
  return out;
}

// Range condition for nu = 1 in its simplified form, hereditarily.
inline bool psi_valid(const Predilator& d, const CTerm& t) {
  for (const auto& k : t->kids)
    if (!psi_valid(d, k) || psi_cmp(d, k, t) >= 0) return false;
  return true;
}

// Range condition for a finite nu, hereditarily: G_alpha(tau) <_fin tau for pi(t) = (alpha, tau).
inline bool nu_valid(const Predilator& d, const CTerm& t) {
  for (const auto& k : t->kids)
    if (!nu_valid(d, k)) return false;
  return fin_below(d, g_nu(d, t->alpha, pi(t)), pi(t));
}

// pi inverse on psi_1(D).
inline CTerm collapse(const Predilator& d, const Over<CTerm>& sigma) {
  auto c = canonical_over(d, sigma.shape, sigma.elems);
  if (!d.valid(c.shape, c.elems.size())) throw CollapseError("collapse: not a value of " + d.name());
  if (!fin_below(d, g0(c), c))
    throw CollapseError("collapse: range condition fails for " + d.show(c.shape));
  return make_term(std::move(c.shape), std::move(c.elems));
}

inline CTerm parse_term(const Predilator& d, const Sexpr& e) {
  if (!e.headed("cl") || e.arity() != 2) throw ParseError("expected (cl <value>)");
  std::vector<CTerm> pool;
  Value v = d.parse(e.items[1], [&](const Sexpr& x) {
    pool.push_back(parse_term(d, x));
    return static_cast<std::int64_t>(pool.size() - 1);
  });
  auto c = canonical_over(d, v, pool);
  if (!d.valid(c.shape, c.elems.size())) throw ParseError(d.name() + ": not a value");
  return make_term(std::move(c.shape), std::move(c.elems));
}

inline CTerm parse_term(const Predilator& d, std::string_view text) { return parse_term(d, parse_sexpr(text)); }

// ---------------------------------------------------------------------------------------------
// Enumeration

// All terms of size at most max_size that `keep` accepts, built from previously accepted terms,
// in canonical order (size, then `cmp`).
template <class Cmp, class Keep>
std::vector<CTerm> enumerate_terms(const Predilator& d, std::size_t max_size, Cmp cmp, Keep keep) {
  std::vector<CTerm> sorted;  // accepted terms, ascending in cmp
  std::vector<std::size_t> sorted_size;
  std::vector<CTerm> out;
  std::vector<std::vector<Value>> shapes(max_size + 1);
  for (std::size_t k = 0; k < max_size; ++k)
    for (auto& v : d.enumerate(k, max_size - k))
      if (d.supp(v).size() == k) shapes[k].push_back(std::move(v));

  for (std::size_t n = 1; n <= max_size; ++n) {
    std::vector<CTerm> fresh;
    for (std::size_t k = 0; k < n; ++k)
      for (const auto& shape : shapes[k]) {
        std::size_t s = d.size(shape);
        if (s > n || n - s < k) continue;
        std::vector<CTerm> chosen;
        std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t from, std::size_t left) {
          if (chosen.size() == k) {
            if (left != 0) return;
            auto t = make_term(shape, chosen);
            if (keep(t)) fresh.push_back(std::move(t));
            return;
          }
          std::size_t need = k - chosen.size();
          for (std::size_t i = from; i + need <= sorted.size(); ++i) {
            if (sorted_size[i] + (need - 1) > left) continue;
            chosen.push_back(sorted[i]);
            pick(i + 1, left - sorted_size[i]);
            chosen.pop_back();
          }
        };
        pick(0, n - s);
      }
    merge_sort(fresh, cmp);
    for (const auto& t : fresh) {
      out.push_back(t);
      sorted.push_back(t);
    }
    merge_sort(sorted, cmp);
    sorted_size.clear();
    for (const auto& t : sorted) sorted_size.push_back(term_size(d, t));
  }
  return out;
}

// psi_1(D) up to the given size.
inline std::vector<CTerm> psi1_enumerate(const Predilator& d, std::size_t max_size) {
  auto cmp = [&](const CTerm& s, const CTerm& t) { return psi_cmp(d, s, t); };
  return enumerate_terms(d, max_size, cmp, [&](const CTerm& t) {
    for (const auto& k : t->kids)
      if (psi_cmp(d, k, t) >= 0) return false;
    return true;
  });
}

// psi_1^+(D) up to the given size.
inline std::vector<CTerm> psi1_plus_enumerate(const Predilator& d, std::size_t max_size) {
  auto cmp = [&](const CTerm& s, const CTerm& t) { return psi_cmp(d, s, t); };
  return enumerate_terms(d, max_size, cmp, [](const CTerm&) { return true; });
}

inline void sort_terms(const Predilator& d, std::vector<CTerm>& ts) {
  merge_sort(ts, [&](const CTerm& s, const CTerm& t) { return psi_cmp(d, s, t); });
}

// psi_1(D) as a term system.
struct PsiSystem {
  using term_type = CTerm;
  PredPtr d;

  Ordering compare(const CTerm& s, const CTerm& t) const { return psi_cmp(*d, s, t); }
  std::vector<CTerm> enumerate(std::size_t bound) const { return psi1_enumerate(*d, bound); }
  std::size_t size(const CTerm& t) const { return term_size(*d, t); }
  Sexpr print(const CTerm& t) const { return print_term(*d, t); }
  CTerm parse(const Sexpr& e) const {
    auto t = parse_term(*d, e);
    if (!psi_valid(*d, t)) throw ParseError("term violates the range condition");
    return t;
  }
  bool valid(const CTerm& t) const { return psi_valid(*d, t); }
};

// ---------------------------------------------------------------------------------------------
// Termination prefixes and fixed points

// pi(x) = A_x for each point of the prefix, as terms.
inline std::vector<CTerm> termination_to_fp(const TerminationPrefix& p) {
  if (p.boundary > 0) throw PrefixError("termination_to_fp: prefix has unrepresented points");
  const Predilator& d = *p.d;
  std::vector<CTerm> terms;
  for (std::size_t x = 0; x < p.size(); ++x) {
    auto s = d.supp(p.a[x]);
    std::vector<std::int64_t> pos(x, -1);
    std::vector<CTerm> kids;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] >= x) throw PrefixError("termination_to_fp: A_" + std::to_string(x) + " not over its predecessors");
      pos[s[i]] = static_cast<std::int64_t>(i);
      kids.push_back(terms[s[i]]);
    }
    Value shape = d.map_elems(p.a[x], [&](std::int64_t e) { return pos[static_cast<std::size_t>(e)]; });
    auto t = make_term(std::move(shape), std::move(kids));
    if (x > 0 && psi_cmp(d, terms[x - 1], t) >= 0)
      throw PrefixError("termination_to_fp: condition (1) fails, pi not increasing at point " + std::to_string(x));
    for (const auto& k : t->kids)
      if (psi_cmp(d, k, t) >= 0)
        throw PrefixError("termination_to_fp: range condition fails at point " + std::to_string(x));
    terms.push_back(std::move(t));
  }
  return terms;
}

inline std::optional<std::size_t> find_term(const Predilator& d, const std::vector<CTerm>& sorted, const CTerm& t) {
  std::size_t lo = 0, hi = sorted.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto c = psi_cmp(d, sorted[mid], t);
    if (c == 0) return mid;
    if (c < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return std::nullopt;
}

// A_x recovered from pi(x) for an increasing list of terms closed under children.
inline TerminationPrefix fp_to_termination(PredPtr d, const std::vector<CTerm>& terms) {
  TerminationPrefix p;
  p.d = d;
  for (std::size_t x = 0; x < terms.size(); ++x) {
    if (x > 0 && psi_cmp(*d, terms[x - 1], terms[x]) >= 0) throw PrefixError("fp_to_termination: terms not increasing");
    std::vector<std::int64_t> idx;
    for (const auto& k : terms[x]->kids) {
      auto i = find_term(*d, terms, k);
      if (!i) throw PrefixError("fp_to_termination: child missing from the prefix: " + show_term(*d, k));
      if (*i >= x) throw PrefixError("fp_to_termination: support of pi(x) not below x");
      idx.push_back(static_cast<std::int64_t>(*i));
    }
    p.a.push_back(d->map_elems(terms[x]->payload, [&](std::int64_t e) { return idx[static_cast<std::size_t>(e)]; }));
    p.weight.push_back(term_size(*d, terms[x]));
  }
  return p;
}

// ---------------------------------------------------------------------------------------------
// Heights

inline constexpr std::size_t default_height_fuel = 1'000'000;

// A relation on natural-number codes, given by the finite set of predecessors of each code.
struct CodedRelation {
  std::function<std::vector<std::uint64_t>(std::uint64_t)> preds;
};

struct HeightReport {
  bool terminated = true;
  bool respects = true;
  std::size_t steps = 0;
  std::vector<std::pair<std::uint64_t, std::size_t>> heights;
  // Longest descending sequence found; on exhaustion, from the element being searched.
  std::vector<std::uint64_t> longest_descent;
  std::string message;

  bool ok() const { return terminated && respects; }
  std::optional<std::size_t> height_of(std::uint64_t x) const {
    for (const auto& [c, h] : heights)
      if (c == x) return h;
    return std::nullopt;
  }
};

// h(x) is the least n such that no descending sequence of length n starts at x. Candidate
// sequences of length n only use codes up to f(x, n-1), where f(x, 0) = x and f(x, n) adds every
// predecessor of every code up to f(x, n-1).
inline HeightReport synthesize_height(const CodedRelation& rel, const std::vector<std::uint64_t>& elements,
                                      std::size_t fuel = default_height_fuel) {
  HeightReport r;
  struct OutOfFuel {};
  auto spend = [&](std::size_t k) {
    r.steps += k;
    if (r.steps > fuel) throw OutOfFuel{};
  };
  // reach[c]: the largest code among c and the predecessors of codes up to c
  std::vector<std::uint64_t> reach;
  auto reach_of = [&](std::uint64_t c) {
    while (reach.size() <= c) {
      std::uint64_t k = reach.size(), m = reach.empty() ? k : std::max(reach.back(), k);
      auto ps = rel.preds(k);
      spend(1 + ps.size());
      for (auto l : ps) m = std::max(m, l);
      reach.push_back(m);
    }
    return reach[c];
  };
  for (auto x : elements) {
    std::vector<std::uint64_t> bound{x};
    std::vector<std::uint64_t> best{x}, path{x};
    try {
      for (std::size_t n = 2;; ++n) {
        while (bound.size() < n) bound.push_back(reach_of(bound.back()));
        std::uint64_t limit = bound[n - 1];
        path.assign(1, x);
        std::function<bool()> dfs = [&]() -> bool {
          if (path.size() == n) return true;
          for (auto l : rel.preds(path.back())) {
            spend(1);
            if (l > limit) continue;
            path.push_back(l);
            if (dfs()) return true;
            path.pop_back();
          }
          return false;
        };
        if (!dfs()) {
          r.heights.emplace_back(x, n);
          break;
        }
        best = path;
      }
    } catch (const OutOfFuel&) {
      r.terminated = false;
      r.longest_descent = best;
      r.message = "height search out of fuel at element " + std::to_string(x) + " after a descent of length " +
                  std::to_string(best.size());
      return r;
    }
    if (best.size() > r.longest_descent.size()) r.longest_descent = best;
  }
  for (const auto& [y, hy] : r.heights)
    for (auto x : rel.preds(y))
      if (auto hx = r.height_of(x); hx && *hx >= hy) {
        r.respects = false;
        r.message = "height not decreasing from " + std::to_string(y) + " to " + std::to_string(x);
      }
  return r;
}

// x precedes y iff x lies in the support of A_y.
inline CodedRelation prefix_relation(const TerminationPrefix& p) {
  return CodedRelation{[&p](std::uint64_t y) {
    std::vector<std::uint64_t> out;
    if (y < p.boundary || y >= p.size()) return out;
    for (auto s : p.d->supp(p.a[y])) out.push_back(s);
    return out;
  }};
}

inline HeightReport synthesize_height(const TerminationPrefix& p, std::size_t fuel = default_height_fuel) {
  std::vector<std::uint64_t> xs;
  for (std::size_t x = 0; x < p.size(); ++x) xs.push_back(x);
  return synthesize_height(prefix_relation(p), xs, fuel);
}

// The child relation on an increasing list of terms closed under children.
inline HeightReport synthesize_height(const Predilator& d, const std::vector<CTerm>& sorted,
                                      std::size_t fuel = default_height_fuel) {
  std::vector<std::vector<std::uint64_t>> preds(sorted.size());
  for (std::size_t y = 0; y < sorted.size(); ++y)
    for (const auto& k : sorted[y]->kids)
      if (auto i = find_term(d, sorted, k)) preds[y].push_back(*i);
  std::vector<std::uint64_t> xs;
  for (std::size_t x = 0; x < sorted.size(); ++x) xs.push_back(x);
  return synthesize_height(CodedRelation{[&](std::uint64_t y) {
                             return y < preds.size() ? preds[y] : std::vector<std::uint64_t>{};
                           }},
                           xs, fuel);
}

// ---------------------------------------------------------------------------------------------
// Conditions on termination prefixes

struct ConditionReport {
  std::size_t points = 0;
  std::size_t bound = 0;
  std::size_t checked = 0;              // enumerated values examined
  std::size_t dichotomy_witnesses = 0;  // minimality witnesses of the equality or support kind
  std::size_t other_witnesses = 0;
  std::size_t beyond_prefix = 0;  // values above every A_x of an incomplete prefix
  bool minimal = true;            // (1)
  bool cofinal = true;            // (2), as a consequence of (4)
  bool least_point = true;        // (4)
  bool heights = true;            // (3)
  HeightReport height;
  std::vector<std::string> violations;

  bool ok() const { return minimal && cofinal && least_point && heights; }
};

inline ConditionReport check_conditions(const TerminationPrefix& p, std::size_t bound,
                                        std::size_t fuel = default_height_fuel, std::size_t max_violations = 8) {
  const Predilator& d = *p.d;
  ConditionReport r;
  r.points = p.size();
  r.bound = bound;
  auto note = [&](std::string v) {
    if (r.violations.size() < max_violations) r.violations.push_back(std::move(v));
  };
  auto at = [&](std::size_t x) { return "A_" + std::to_string(x) + " = " + d.show(p.a[x]); };

  for (std::size_t x = p.boundary; x < p.size(); ++x) {
    const Value& ax = p.a[x];
    if (!d.valid(ax, x)) {
      r.minimal = false;
      note("(1) " + at(x) + " is not a value over its predecessors");
      continue;
    }
    for (std::size_t y = 0; y < x; ++y)
      if (d.compare(p.a[y], ax) >= 0) {
        r.minimal = false;
        note("(1) " + at(x) + " not above " + at(y));
      }
    for (const auto& sigma : d.enumerate(x, bound)) {
      if (d.compare(sigma, ax) >= 0) continue;
      ++r.checked;
      bool witness = false;
      for (std::size_t y = 0; y < x && !witness; ++y) witness = d.compare(sigma, p.a[y]) == 0;
      for (auto y : d.supp(sigma))
        if (!witness && d.compare(sigma, p.a[y]) <= 0) witness = true;
      if (witness) {
        ++r.dichotomy_witnesses;
        continue;
      }
      for (std::size_t y = 0; y < x && !witness; ++y) witness = d.compare(sigma, p.a[y]) <= 0;
      if (witness) {
        ++r.other_witnesses;
        continue;
      }
      r.minimal = false;
      note("(1) " + at(x) + " not minimal: " + d.show(sigma) + " lies above every earlier value");
    }
  }

  for (const auto& sigma : d.enumerate(p.size(), bound)) {
    ++r.checked;
    auto s = d.supp(sigma);
    std::size_t from = std::max(p.boundary, s.empty() ? std::size_t{0} : s.back());
    bool found = false;
    for (std::size_t x = from; x < p.size() && !found; ++x) found = d.compare(sigma, p.a[x]) <= 0;
    if (found) continue;
    if (!p.complete) {
      ++r.beyond_prefix;
      continue;
    }
    r.least_point = r.cofinal = false;
    note("(4) no point bounds " + d.show(sigma));
  }

  r.height = synthesize_height(p, fuel);
  if (!r.height.ok()) {
    r.heights = false;
    note("(3) " + r.height.message);
  }
  return r;
}

// ---------------------------------------------------------------------------------------------
// Homomorphisms

template <class T>
struct HomResult {
  std::vector<std::optional<T>> image;
  std::vector<std::string> errors;
  MonotonicityReport monotone;
  bool ok() const { return errors.empty() && monotone.ok(); }
};

// f(x) = collapse(D(f)(pi(x))) by recursion on children. `collapse(shape, elems)` receives a value
// whose element i is elems[i] and returns the target term or nullopt; `eta` translates payloads when
// the target is built over a different predilator.
template <class T, class Collapse, class Cmp, class Eta>
HomResult<T> unique_hom(const Predilator& d, const std::vector<CTerm>& source, Collapse collapse, Cmp cmp_target,
                        Eta eta) {
  HomResult<T> r;
  std::unordered_map<const CollapseNode*, std::optional<T>> memo;
  std::function<std::optional<T>(const CTerm&)> f = [&](const CTerm& t) -> std::optional<T> {
    if (auto it = memo.find(t.get()); it != memo.end()) return it->second;
    std::vector<T> elems;
    std::optional<T> out;
    bool defined = true;
    for (const auto& k : t->kids) {
      auto fk = f(k);
      if (!fk) {
        defined = false;
        break;
      }
      elems.push_back(std::move(*fk));
    }
    if (defined) {
      out = collapse(eta(t->payload), elems);
      if (!out) r.errors.push_back("target collapse undefined at " + show_term(d, t));
    }
    memo.emplace(t.get(), out);
    return out;
  };
  std::vector<CTerm> defined;
  for (const auto& t : source) {
    r.image.push_back(f(t));
    if (r.image.back()) defined.push_back(t);
  }
  r.monotone = check_monotone(
      "unique_hom", 0, defined, [&](const CTerm& t) { return *f(t); },
      [&](const CTerm& a, const CTerm& b) { return psi_cmp(d, a, b); }, cmp_target,
      [&](const CTerm& t) { return show_term(d, t); });
  return r;
}

// psi_1(D) as a collapse target.
struct PsiTarget {
  const Predilator* d;
  std::optional<CTerm> operator()(const Value& shape, const std::vector<CTerm>& elems) const {
    try {
      return collapse(*d, Over<CTerm>{shape, elems});
    } catch (const CollapseError&) {
      return std::nullopt;
    }
  }
};

// The unique homomorphism psi_1(D) -> psi_1(E) for a natural transformation eta: D => E.
template <class Eta>
HomResult<CTerm> psi_hom(const Predilator& d, const Predilator& e, const std::vector<CTerm>& source, Eta eta) {
  return unique_hom<CTerm>(d, source, PsiTarget{&e}, [&](const CTerm& a, const CTerm& b) { return psi_cmp(e, a, b); },
                           eta);
}

inline HomResult<CTerm> psi_hom(const Predilator& d, const std::vector<CTerm>& source) {
  return psi_hom(d, d, source, [](const Value& v) { return v; });
}

// ---------------------------------------------------------------------------------------------
// Bachmann-Howard collapses

// Generic theta-terms: theta(sigma) with sigma a D-value over earlier theta-terms, stored like
// collapse terms. theta(s) < theta(t) iff s < t with supp(s) <_fin theta(t), or theta(s) <=_fin supp(t).
inline Ordering bh_cmp(const Predilator& d, const CTerm& s, const CTerm& t);

inline bool bh_less(const Predilator& d, const CTerm& s, const CTerm& t) {
  auto c = d.compare(s->payload, t->payload, [&](std::int64_t i, std::int64_t j) {
    return bh_cmp(d, s->kids[static_cast<std::size_t>(i)], t->kids[static_cast<std::size_t>(j)]);
  });
  if (c < 0) {
    bool below = true;
    for (const auto& k : s->kids)
      if (bh_cmp(d, k, t) >= 0) {
        below = false;
        break;
      }
    if (below) return true;
  }
  for (const auto& u : t->kids)
    if (bh_cmp(d, s, u) <= 0) return true;
  return false;
}

inline Ordering bh_cmp(const Predilator& d, const CTerm& s, const CTerm& t) {
  if (s == t) return Ordering::equal;
  if (bh_less(d, s, t)) return Ordering::less;
  if (bh_less(d, t, s)) return Ordering::greater;
  return Ordering::equal;
}

inline std::vector<CTerm> bh_enumerate(const Predilator& d, std::size_t max_size) {
  return enumerate_terms(d, max_size, [&](const CTerm& s, const CTerm& t) { return bh_cmp(d, s, t); },
                         [](const CTerm&) { return true; });
}

inline Sexpr print_bh(const Predilator& d, const CTerm& t) {
  return Sexpr::make_list({Sexpr::make_atom("th"), d.print(t->payload, [&](std::int64_t i) {
                             return print_bh(d, t->kids[static_cast<std::size_t>(i)]);
                           })});
}

inline CTerm parse_bh(const Predilator& d, const Sexpr& e) {
  if (!e.headed("th") || e.arity() != 2) throw ParseError("expected (th <value>)");
  std::vector<CTerm> pool;
  Value v = d.parse(e.items[1], [&](const Sexpr& x) {
    pool.push_back(parse_bh(d, x));
    return static_cast<std::int64_t>(pool.size() - 1);
  });
  auto c = make_over(d, v, pool, [&](const CTerm& a, const CTerm& b) { return bh_cmp(d, a, b); });
  if (!d.valid(c.shape, c.elems.size())) throw ParseError(d.name() + ": not a value");
  return make_term(std::move(c.shape), std::move(c.elems));
}

// The generic theta-terms as a term system.
struct BHSystem {
  using term_type = CTerm;
  PredPtr d;

  Ordering compare(const CTerm& s, const CTerm& t) const { return bh_cmp(*d, s, t); }
  std::vector<CTerm> enumerate(std::size_t bound) const { return bh_enumerate(*d, bound); }
  std::size_t size(const CTerm& t) const { return term_size(*d, t); }
  Sexpr print(const CTerm& t) const { return print_bh(*d, t); }
  CTerm parse(const Sexpr& e) const { return parse_bh(*d, e); }
};

struct CollapseCheck {
  std::size_t samples = 0;
  std::size_t pairs = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks on samples sigma in D(Y) that theta is a Bachmann-Howard collapse:
// (i) sigma < tau and supp(sigma) <_fin theta(tau) imply theta(sigma) < theta(tau);
// (ii) supp(sigma) <_fin theta(sigma).
template <class Y, class Theta, class Cmp, class Print>
CollapseCheck bh_collapse_check(const Predilator& d, const std::vector<Over<Y>>& samples, Theta theta, Cmp cmp,
                                Print print, std::size_t max_violations = 5) {
  CollapseCheck r;
  r.samples = samples.size();
  auto note = [&](std::string v) {
    if (r.violations.size() < max_violations) r.violations.push_back(std::move(v));
  };
  auto show = [&](const Over<Y>& s) {
    return to_string(d.print(s.shape, [&](std::int64_t i) { return Sexpr::make_atom(print(s.elems[static_cast<std::size_t>(i)])); }));
  };
  std::vector<Y> img;
  for (const auto& s : samples) img.push_back(theta(s));
  auto below = [&](const Over<Y>& s, const Y& y) {
    for (const auto& e : s.elems)
      if (cmp(e, y) >= 0) return false;
    return true;
  };
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (!below(samples[i], img[i])) note("(ii) fails at " + show(samples[i]));
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = 0; j < samples.size(); ++j) {
      if (i == j) continue;
      if (compare_over(d, samples[i], samples[j], cmp) >= 0 || !below(samples[i], img[j])) continue;
      ++r.pairs;
      if (cmp(img[i], img[j]) >= 0) note("(i) fails at " + show(samples[i]) + " < " + show(samples[j]));
    }
  return r;
}

// e(theta(sigma)) = Theta(D(e)(sigma)) by recursion on theta-terms; `theta(shape, elems)` receives
// a value whose element i is elems[i].
template <class Y, class Theta>
std::vector<std::optional<Y>> bh_initial_embed(const std::vector<CTerm>& terms, Theta theta) {
  std::unordered_map<const CollapseNode*, std::optional<Y>> memo;
  std::function<std::optional<Y>(const CTerm&)> e = [&](const CTerm& t) -> std::optional<Y> {
    if (auto it = memo.find(t.get()); it != memo.end()) return it->second;
    std::vector<Y> elems;
    std::optional<Y> out;
    bool defined = true;
    for (const auto& k : t->kids) {
      auto ek = e(k);
      if (!ek) {
        defined = false;
        break;
      }
      elems.push_back(std::move(*ek));
    }
    if (defined) out = theta(t->payload, elems);
    memo.emplace(t.get(), out);
    return out;
  };
  std::vector<std::optional<Y>> out;
  for (const auto& t : terms) out.push_back(e(t));
  return out;
}

}  // namespace dseq
