#pragma once

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "dseq/sexpr.hpp"

namespace dseq {

using Ordering = std::strong_ordering;

inline Ordering reverse(Ordering c) {
  if (c < 0) return Ordering::greater;
  if (c > 0) return Ordering::less;
  return Ordering::equal;
}

inline const char* ordering_name(Ordering c) {
  if (c < 0) return "less";
  if (c > 0) return "greater";
  return "equal";
}

// Non-owning callable reference; the referenced callable must outlive the call.
template <class Sig>
class FunctionRef;

template <class R, class... A>
class FunctionRef<R(A...)> {
 public:
  template <class F>
    requires(!std::same_as<std::remove_cvref_t<F>, FunctionRef> && std::invocable<F&, A...>)
  FunctionRef(F&& f)  // NOLINT(google-explicit-constructor)
      : obj_(const_cast<void*>(static_cast<const void*>(std::addressof(f)))),
        call_([](void* o, A... a) -> R {
          return (*static_cast<std::remove_reference_t<F>*>(o))(std::forward<A>(a)...);
        }) {}

  R operator()(A... a) const { return call_(obj_, std::forward<A>(a)...); }

 private:
  void* obj_;
  R (*call_)(void*, A...);
};

struct OrderError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The finite order {0 < 1 < ... < size-1}.
struct FinOrder {
  std::size_t size = 0;
  bool contains(std::size_t x) const { return x < size; }
  bool operator==(const FinOrder&) const = default;
};

// A strictly increasing map between finite orders.
class OrderMap {
 public:
  OrderMap() = default;
  OrderMap(std::size_t domain, std::size_t codomain, std::vector<std::size_t> graph)
      : dom_(domain), cod_(codomain), graph_(std::move(graph)) {
    if (graph_.size() != dom_) throw OrderError("order map: graph size differs from domain");
    for (std::size_t i = 0; i < graph_.size(); ++i) {
      if (graph_[i] >= cod_) throw OrderError("order map: value outside codomain");
      if (i && graph_[i - 1] >= graph_[i]) throw OrderError("order map: not strictly increasing");
    }
  }

  static OrderMap identity(std::size_t n) { return inclusion(n, n); }

  // The canonical inclusion of n into m.
  static OrderMap inclusion(std::size_t n, std::size_t m) {
    if (n > m) throw OrderError("inclusion: domain larger than codomain");
    std::vector<std::size_t> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = i;
    return OrderMap(n, m, std::move(g));
  }

  // The inclusion of a sorted subset of m.
  static OrderMap of_subset(const std::vector<std::size_t>& subset, std::size_t m) {
    return OrderMap(subset.size(), m, subset);
  }

  std::size_t domain() const { return dom_; }
  std::size_t codomain() const { return cod_; }
  const std::vector<std::size_t>& graph() const { return graph_; }

  std::size_t operator()(std::size_t x) const {
    if (x >= dom_) throw OrderError("order map: argument outside domain");
    return graph_[x];
  }
  std::int64_t operator()(std::int64_t x) const {
    return static_cast<std::int64_t>((*this)(static_cast<std::size_t>(x)));
  }

  std::vector<std::size_t> image(const std::vector<std::size_t>& xs) const {
    std::vector<std::size_t> out;
    out.reserve(xs.size());
    for (auto x : xs) out.push_back((*this)(x));
    return out;
  }

  // (g * f)(x) = g(f(x))
  friend OrderMap operator*(const OrderMap& g, const OrderMap& f) {
    if (f.cod_ != g.dom_) throw OrderError("compose: codomain/domain mismatch");
    std::vector<std::size_t> h(f.dom_);
    for (std::size_t i = 0; i < f.dom_; ++i) h[i] = g.graph_[f.graph_[i]];
    return OrderMap(f.dom_, g.cod_, std::move(h));
  }

  bool operator==(const OrderMap&) const = default;

 private:
  std::size_t dom_ = 0;
  std::size_t cod_ = 0;
  std::vector<std::size_t> graph_;
};

inline FinOrder restrict_below(FinOrder x_order, std::size_t x) {
  if (!x_order.contains(x)) throw OrderError("restrict_below: element not in order");
  return FinOrder{x};
}

// f restricted to X|x, with codomain Y|f(x).
inline OrderMap restrict_map(const OrderMap& f, std::size_t x) {
  if (x >= f.domain()) throw OrderError("restrict_map: element not in domain");
  std::vector<std::size_t> g(f.graph().begin(), f.graph().begin() + static_cast<std::ptrdiff_t>(x));
  return OrderMap(x, f(x), std::move(g));
}

// Y <_fin Z: every y in Y lies strictly below some z in Z.
template <class Range1, class Range2, class Cmp>
bool fin_subset_lt(const Range1& ys, const Range2& zs, Cmp cmp) {
  for (const auto& y : ys) {
    bool found = false;
    for (const auto& z : zs)
      if (cmp(y, z) < 0) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

template <class Range1, class Range2, class Cmp>
bool fin_subset_le(const Range1& ys, const Range2& zs, Cmp cmp) {
  for (const auto& y : ys) {
    bool found = false;
    for (const auto& z : zs)
      if (cmp(y, z) <= 0) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

inline bool fin_subset_lt(const std::vector<std::int64_t>& ys, const std::vector<std::int64_t>& zs) {
  return fin_subset_lt(ys, zs, [](std::int64_t a, std::int64_t b) { return a <=> b; });
}
inline bool fin_subset_le(const std::vector<std::int64_t>& ys, const std::vector<std::int64_t>& zs) {
  return fin_subset_le(ys, zs, [](std::int64_t a, std::int64_t b) { return a <=> b; });
}

// A term system with decidable comparison, finite enumeration by size, and a print/parse round trip.
template <class S>
concept TermSystem = requires(const S& s, const typename S::term_type& t, std::size_t n,
                              const Sexpr& e) {
  { s.compare(t, t) } -> std::same_as<Ordering>;
  { s.enumerate(n) } -> std::same_as<std::vector<typename S::term_type>>;
  { s.size(t) } -> std::convertible_to<std::size_t>;
  { s.print(t) } -> std::same_as<Sexpr>;
  { s.parse(e) } -> std::same_as<typename S::term_type>;
};

// Merge sort that stays in bounds for arbitrary (even inconsistent) comparators.
template <class T, class Cmp>
void merge_sort(std::vector<T>& xs, Cmp cmp) {
  if (xs.size() < 2) return;
  std::vector<T> buf(xs.size());
  for (std::size_t width = 1; width < xs.size(); width *= 2) {
    for (std::size_t lo = 0; lo < xs.size(); lo += 2 * width) {
      std::size_t mid = std::min(lo + width, xs.size());
      std::size_t hi = std::min(lo + 2 * width, xs.size());
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) buf[k++] = (cmp(xs[j], xs[i]) < 0) ? xs[j++] : xs[i++];
      while (i < mid) buf[k++] = xs[i++];
      while (j < hi) buf[k++] = xs[j++];
    }
    xs.swap(buf);
  }
}

template <TermSystem S>
void sort_by_order(const S& sys, std::vector<typename S::term_type>& xs) {
  merge_sort(xs, [&](const auto& a, const auto& b) { return sys.compare(a, b); });
}

// Canonical enumeration order: by size, then by the system's order as a fixed tie-break.
template <TermSystem S>
void sort_canonical(const S& sys, std::vector<typename S::term_type>& xs) {
  merge_sort(xs, [&](const auto& a, const auto& b) {
    auto sa = sys.size(a), sb = sys.size(b);
    if (sa != sb) return sa <=> sb;
    return sys.compare(a, b);
  });
}

// FinOrder as a term system.
struct FinSystem {
  using term_type = std::size_t;
  std::size_t n = 0;

  Ordering compare(std::size_t a, std::size_t b) const { return a <=> b; }
  std::size_t size(std::size_t) const { return 1; }
  std::vector<std::size_t> enumerate(std::size_t bound) const {
    std::vector<std::size_t> xs;
    if (bound >= 1)
      for (std::size_t i = 0; i < n; ++i) xs.push_back(i);
    return xs;
  }
  Sexpr print(std::size_t a) const { return Sexpr::number(static_cast<std::int64_t>(a)); }
  std::size_t parse(const Sexpr& e) const {
    auto v = e.as_int();
    if (v < 0 || static_cast<std::size_t>(v) >= n) throw ParseError("element outside finite order");
    return static_cast<std::size_t>(v);
  }
  bool valid(std::size_t a) const { return a < n; }
};

// Weakly decreasing sequences in a base order T, ordered lexicographically with proper extensions larger.
template <class T, class Cmp>
Ordering omega_power_cmp(const std::vector<T>& s, const std::vector<T>& t, Cmp cmp) {
  std::size_t n = std::min(s.size(), t.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto c = cmp(s[i], t[i]);
    if (c != 0) return c;
  }
  return s.size() <=> t.size();
}

template <class T, class Cmp>
bool omega_power_valid(const std::vector<T>& s, Cmp cmp) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (cmp(s[i - 1], s[i]) < 0) return false;
  return true;
}

// Weakly decreasing sequences drawn from `desc` (sorted descending), extra size per sequence node `node_cost`.
template <class T, class SizeOf>
std::vector<std::vector<T>> weakly_decreasing_sequences(const std::vector<T>& desc, std::size_t budget,
                                                        SizeOf size_of) {
  std::vector<std::vector<T>> out;
  std::vector<T> cur;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t left) {
    out.push_back(cur);
    for (std::size_t i = from; i < desc.size(); ++i) {
      std::size_t c = size_of(desc[i]);
      if (c > left) continue;
      cur.push_back(desc[i]);
      rec(i, left - c);
      cur.pop_back();
    }
  };
  rec(0, budget);
  return out;
}

template <TermSystem S>
class OmegaPower {
 public:
  using base_term = typename S::term_type;
  using term_type = std::vector<base_term>;

  explicit OmegaPower(S base) : base_(std::move(base)) {}

  const S& base() const { return base_; }

  Ordering compare(const term_type& s, const term_type& t) const {
    if (!valid(s) || !valid(t)) throw OrderError("omega power: sequence not weakly decreasing");
    return omega_power_cmp(s, t, [&](const auto& a, const auto& b) { return base_.compare(a, b); });
  }
  bool valid(const term_type& s) const {
    return omega_power_valid(s, [&](const auto& a, const auto& b) { return base_.compare(a, b); });
  }
  std::size_t size(const term_type& s) const {
    std::size_t n = 1;
    for (const auto& x : s) n += base_.size(x);
    return n;
  }
  std::vector<term_type> enumerate(std::size_t bound) const {
    if (bound == 0) return {};
    auto elems = base_.enumerate(bound - 1);
    sort_by_order(base_, elems);
    std::reverse(elems.begin(), elems.end());
    auto out = weakly_decreasing_sequences(elems, bound - 1, [&](const auto& x) { return base_.size(x); });
    sort_canonical(*this, out);
    return out;
  }
  Sexpr print(const term_type& s) const {
    std::vector<Sexpr> xs{Sexpr::make_atom("s")};
    for (const auto& x : s) xs.push_back(base_.print(x));
    return Sexpr::make_list(std::move(xs));
  }
  term_type parse(const Sexpr& e) const {
    if (!e.headed("s")) throw ParseError("expected (s ...)");
    term_type s;
    for (std::size_t i = 1; i < e.items.size(); ++i) s.push_back(base_.parse(e.items[i]));
    if (!valid(s)) throw ParseError("sequence not weakly decreasing");
    return s;
  }

 private:
  S base_;
};

// Element of an iterated omega power: a base atom at level 0, otherwise a sequence one level down.
template <class T>
struct Tower {
  bool atom = false;
  T base{};
  std::vector<Tower> seq;

  static Tower of(T x) {
    Tower t;
    t.atom = true;
    t.base = std::move(x);
    return t;
  }
  static Tower of(std::vector<Tower> xs) {
    Tower t;
    t.seq = std::move(xs);
    return t;
  }
  bool operator==(const Tower&) const = default;
};

// omega^<n, X>: n-fold iterated omega power over a base system.
template <TermSystem S>
class OmegaTower {
 public:
  using term_type = Tower<typename S::term_type>;

  OmegaTower(std::size_t levels, S base) : levels_(levels), base_(std::move(base)) {}

  std::size_t levels() const { return levels_; }
  const S& base() const { return base_; }

  Ordering compare(const term_type& s, const term_type& t) const { return cmp_at(levels_, s, t); }

  Ordering cmp_at(std::size_t level, const term_type& s, const term_type& t) const {
    if (level == 0) {
      if (!s.atom || !t.atom) throw OrderError("omega tower: expected base element");
      return base_.compare(s.base, t.base);
    }
    if (s.atom || t.atom) throw OrderError("omega tower: expected sequence");
    return omega_power_cmp(s.seq, t.seq, [&](const auto& a, const auto& b) { return cmp_at(level - 1, a, b); });
  }

  bool valid(const term_type& s) const { return valid_at(levels_, s); }
  bool valid_at(std::size_t level, const term_type& s) const {
    if (level == 0) return s.atom;
    if (s.atom) return false;
    for (const auto& x : s.seq)
      if (!valid_at(level - 1, x)) return false;
    return omega_power_valid(s.seq, [&](const auto& a, const auto& b) { return cmp_at(level - 1, a, b); });
  }

  std::size_t size(const term_type& s) const {
    if (s.atom) return base_.size(s.base);
    std::size_t n = 1;
    for (const auto& x : s.seq) n += size(x);
    return n;
  }

  std::vector<term_type> enumerate(std::size_t bound) const { return enumerate_at(levels_, bound); }

  std::vector<term_type> enumerate_at(std::size_t level, std::size_t bound) const {
    std::vector<term_type> out;
    if (level == 0) {
      for (auto& x : base_.enumerate(bound)) out.push_back(term_type::of(x));
      return out;
    }
    if (bound == 0) return out;
    auto elems = enumerate_at(level - 1, bound - 1);
    merge_sort(elems, [&](const auto& a, const auto& b) { return cmp_at(level - 1, b, a); });
    for (auto& s : weakly_decreasing_sequences(elems, bound - 1, [&](const auto& x) { return size(x); }))
      out.push_back(term_type::of(std::move(s)));
    merge_sort(out, [&](const auto& a, const auto& b) {
      auto sa = size(a), sb = size(b);
      if (sa != sb) return sa <=> sb;
      return cmp_at(level, a, b);
    });
    return out;
  }

  Sexpr print(const term_type& s) const {
    if (s.atom) return base_.print(s.base);
    std::vector<Sexpr> xs{Sexpr::make_atom("s")};
    for (const auto& x : s.seq) xs.push_back(print(x));
    return Sexpr::make_list(std::move(xs));
  }
  term_type parse(const Sexpr& e) const {
    auto t = parse_at(levels_, e);
    if (!valid(t)) throw ParseError("omega tower term not weakly decreasing");
    return t;
  }
  term_type parse_at(std::size_t level, const Sexpr& e) const {
    if (level == 0) return term_type::of(base_.parse(e));
    if (!e.headed("s")) throw ParseError("expected (s ...)");
    std::vector<term_type> xs;
    for (std::size_t i = 1; i < e.items.size(); ++i) xs.push_back(parse_at(level - 1, e.items[i]));
    return term_type::of(std::move(xs));
  }

 private:
  std::size_t levels_;
  S base_;
};

template <TermSystem S>
OmegaTower<S> omega_iter(std::size_t n, S base) {
  return OmegaTower<S>(n, std::move(base));
}

// The suborder of all terms strictly below a fixed element.
template <TermSystem S>
class Below {
 public:
  using term_type = typename S::term_type;

  Below(S base, term_type top) : base_(std::move(base)), top_(std::move(top)) {}

  Ordering compare(const term_type& a, const term_type& b) const { return base_.compare(a, b); }
  std::size_t size(const term_type& a) const { return base_.size(a); }
  bool contains(const term_type& a) const { return base_.compare(a, top_) < 0; }
  std::vector<term_type> enumerate(std::size_t bound) const {
    std::vector<term_type> out;
    for (auto& t : base_.enumerate(bound))
      if (contains(t)) out.push_back(std::move(t));
    return out;
  }
  Sexpr print(const term_type& a) const { return base_.print(a); }
  term_type parse(const Sexpr& e) const {
    auto t = base_.parse(e);
    if (!contains(t)) throw ParseError("term not below the restriction point");
    return t;
  }

 private:
  S base_;
  term_type top_;
};

// restrict_below for a term system; `member` decides whether x belongs to the system.
template <TermSystem S, class Member>
Below<S> restrict_below(S base, typename S::term_type x, Member member) {
  if (!member(x)) throw OrderError("restrict_below: element not in order");
  return Below<S>(std::move(base), std::move(x));
}

struct LinearityReport {
  std::size_t terms = 0;
  std::size_t pairs = 0;
  bool ok = true;
  std::string violation;
};

// Checks irreflexivity, trichotomy/antisymmetry on all pairs, and transitivity. Transitivity is
// certified by sorting and confirming every pair of the sorted list is ordered by position; on failure
// a violating triple is searched for explicitly.
template <class T, class Cmp, class Print>
LinearityReport linearity_suite(std::vector<T> terms, Cmp cmp, Print print) {
  LinearityReport r;
  r.terms = terms.size();
  for (const auto& t : terms)
    if (cmp(t, t) != 0) {
      r.ok = false;
      r.violation = "irreflexivity fails at " + print(t);
      return r;
    }
  merge_sort(terms, cmp);
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      ++r.pairs;
      auto c = cmp(terms[i], terms[j]);
      auto d = cmp(terms[j], terms[i]);
      if (c == 0 || d == 0) {
        r.ok = false;
        r.violation = "distinct terms compare equal: " + print(terms[i]) + " vs " + print(terms[j]);
        return r;
      }
      if (c != reverse(d)) {
        r.ok = false;
        r.violation = "asymmetric comparison: " + print(terms[i]) + " vs " + print(terms[j]);
        return r;
      }
      if (c > 0) {
        r.ok = false;
        for (std::size_t a = 0; a < terms.size() && r.violation.empty(); ++a)
          for (std::size_t b = 0; b < terms.size() && r.violation.empty(); ++b)
            for (std::size_t k = 0; k < terms.size(); ++k)
              if (cmp(terms[a], terms[b]) < 0 && cmp(terms[b], terms[k]) < 0 && cmp(terms[a], terms[k]) >= 0) {
                r.violation = "transitivity fails: " + print(terms[a]) + " < " + print(terms[b]) + " < " +
                              print(terms[k]);
                break;
              }
        if (r.violation.empty())
          r.violation = "sorted order inconsistent at " + print(terms[i]) + " / " + print(terms[j]);
        return r;
      }
    }
  return r;
}

template <TermSystem S>
LinearityReport linearity_suite(const S& sys, std::size_t bound) {
  return linearity_suite(
      sys.enumerate(bound), [&](const auto& a, const auto& b) { return sys.compare(a, b); },
      [&](const auto& a) { return to_string(sys.print(a)); });
}

struct MonotonicityReport {
  std::string map;
  std::size_t bound = 0;
  std::size_t terms = 0;
  std::size_t pairs = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Strict monotonicity of `f` over all pairs of `src`.
template <class S, class F, class CmpS, class CmpT, class PrintS>
MonotonicityReport check_monotone(std::string name, std::size_t bound, const std::vector<S>& src, F f,
                                  CmpS cmp_src, CmpT cmp_tgt, PrintS print_src, std::size_t max_violations = 5) {
  MonotonicityReport r;
  r.map = std::move(name);
  r.bound = bound;
  r.terms = src.size();
  using Img = std::decay_t<decltype(f(src.front()))>;
  std::vector<Img> img;
  img.reserve(src.size());
  for (const auto& s : src) img.push_back(f(s));
  for (std::size_t i = 0; i < src.size(); ++i)
    for (std::size_t j = i + 1; j < src.size(); ++j) {
      ++r.pairs;
      auto c = cmp_src(src[i], src[j]);
      auto d = cmp_tgt(img[i], img[j]);
      if (c != d && r.violations.size() < max_violations)
        r.violations.push_back(print_src(src[i]) + " " + ordering_name(c) + " " + print_src(src[j]) +
                               " but images " + ordering_name(d));
    }
  return r;
}

}  // namespace dseq
