#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dseq/order.hpp"
#include "dseq/sexpr.hpp"

namespace dseq {

// Payload of a predilator value: a small tree whose `elem` leaves are elements of the base order.
struct Value {
  enum class Kind : std::uint8_t { elem, num, node };

  Kind kind = Kind::node;
  std::int64_t n = 0;  // element index, number, or node tag
  std::vector<Value> kids;

  static Value elem(std::int64_t i) { return Value{Kind::elem, i, {}}; }
  static Value num(std::int64_t v) { return Value{Kind::num, v, {}}; }
  static Value node(std::int64_t tag, std::vector<Value> kids = {}) {
    return Value{Kind::node, tag, std::move(kids)};
  }

  bool is_elem() const { return kind == Kind::elem; }
  bool is_num() const { return kind == Kind::num; }
  bool is_node(std::int64_t tag) const { return kind == Kind::node && n == tag; }

  bool operator==(const Value&) const = default;
};

// Structural order on payloads, used only for deduplication and tie-breaking.
inline Ordering structural_cmp(const Value& a, const Value& b) {
  if (a.kind != b.kind) return a.kind <=> b.kind;
  if (a.n != b.n) return a.n <=> b.n;
  std::size_t k = std::min(a.kids.size(), b.kids.size());
  for (std::size_t i = 0; i < k; ++i) {
    auto c = structural_cmp(a.kids[i], b.kids[i]);
    if (c != 0) return c;
  }
  return a.kids.size() <=> b.kids.size();
}

// Node tags shared by the shipped predilators.
namespace tag {
inline constexpr std::int64_t g_sum = 1, g_term = 2, w_sum = 3, w_term = 4;
inline constexpr std::int64_t inl = 10, inr = 11, seq = 12;
inline constexpr std::int64_t bump0 = 20, bump1 = 21, bump2 = 22;
inline constexpr std::int64_t tree_leaf = 30, tree_node = 31;
inline constexpr std::int64_t rational = 40;
inline constexpr std::int64_t v_power = 50, v_times = 51;
inline constexpr std::int64_t e_big = 60, e_sum = 61;
}  // namespace tag

using ElemCmp = FunctionRef<Ordering(std::int64_t, std::int64_t)>;
using ElemMap = FunctionRef<std::int64_t(std::int64_t)>;
using ElemPrint = FunctionRef<Sexpr(std::int64_t)>;
using ElemParse = FunctionRef<std::int64_t(const Sexpr&)>;

struct Unsupported : std::logic_error {
  using std::logic_error::logic_error;
};

inline Value map_elem_leaves(const Value& v, ElemMap f) {
  if (v.is_elem()) return Value::elem(f(v.n));
  if (v.kids.empty()) return v;
  Value out{v.kind, v.n, {}};
  out.kids.reserve(v.kids.size());
  for (const auto& k : v.kids) out.kids.push_back(map_elem_leaves(k, f));
  return out;
}

inline void collect_elem_leaves(const Value& v, std::vector<std::size_t>& out) {
  if (v.is_elem()) out.push_back(static_cast<std::size_t>(v.n));
  for (const auto& k : v.kids) collect_elem_leaves(k, out);
}

inline std::vector<std::size_t> sorted_unique(std::vector<std::size_t> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

// A coded predilator: for each finite order n (elements 0..n-1) a set D(n) of payloads with a
// decidable order, a functorial action on order maps, and finite supports.
class Predilator {
 public:
  virtual ~Predilator() = default;

  virtual std::string name() const = 0;

  // Membership of v in D(base).
  virtual bool valid(const Value& v, std::size_t base) const = 0;

  // Compares a in D(A) with b in D(B), given how elements of A compare with elements of B.
  virtual Ordering compare(const Value& a, const Value& b, ElemCmp elems) const = 0;

  Ordering compare(const Value& a, const Value& b) const {
    return compare(a, b, [](std::int64_t i, std::int64_t j) { return i <=> j; });
  }

  // Applies f to every base element the value refers to.
  virtual Value map_elems(const Value& v, ElemMap f) const { return map_elem_leaves(v, f); }

  virtual std::vector<std::size_t> supp(const Value& v) const {
    std::vector<std::size_t> out;
    collect_elem_leaves(v, out);
    return sorted_unique(std::move(out));
  }

  // Symbol count used by enumeration.
  virtual std::size_t size(const Value& v) const = 0;

  // All values of D(base) of size at most max_size, in canonical order.
  virtual std::vector<Value> enumerate(std::size_t base, std::size_t max_size) const = 0;

  virtual bool has_least_above() const { return false; }

  // Least value of D(base) strictly above all of vals; nullopt when none exists.
  virtual std::optional<Value> least_above(std::size_t, const std::vector<Value>&) const {
    throw Unsupported(name() + ": least_above not available");
  }

  virtual Sexpr print(const Value& v, ElemPrint elem) const = 0;
  virtual Value parse(const Sexpr& e, ElemParse elem) const = 0;

  Value act(const OrderMap& f, const Value& v) const {
    return map_elems(v, [&](std::int64_t i) { return f(i); });
  }

  Sexpr print(const Value& v) const {
    return print(v, [](std::int64_t i) { return Sexpr::number(i); });
  }
  Value parse(const Sexpr& e, std::size_t base) const {
    Value v = parse(e, [&](const Sexpr& x) {
      auto i = x.as_int();
      if (i < 0 || static_cast<std::size_t>(i) >= base) throw ParseError("element index outside base");
      return i;
    });
    if (!valid(v, base)) throw ParseError(name() + ": term not valid over base " + std::to_string(base));
    return v;
  }
  std::string show(const Value& v) const { return to_string(print(v)); }

 protected:
  void canonical(std::vector<Value>& vs) const {
    merge_sort(vs, [&](const Value& a, const Value& b) {
      auto sa = size(a), sb = size(b);
      if (sa != sb) return sa <=> sb;
      return compare(a, b);
    });
  }
};

using PredPtr = std::shared_ptr<const Predilator>;

// A D-value whose support is an explicit strictly increasing list of elements of some order E.
template <class E>
struct Over {
  Value shape;
  std::vector<E> elems;
};

template <class E, class Cmp>
Ordering compare_over(const Predilator& d, const Over<E>& a, const Over<E>& b, Cmp cmp) {
  return d.compare(a.shape, b.shape, [&](std::int64_t i, std::int64_t j) {
    return cmp(a.elems[static_cast<std::size_t>(i)], b.elems[static_cast<std::size_t>(j)]);
  });
}

// Builds the canonical Over from a shape whose elements index into an arbitrary pool.
template <class E, class Cmp>
Over<E> make_over(const Predilator& d, const Value& shape, const std::vector<E>& pool, Cmp cmp) {
  auto used = d.supp(shape);
  std::vector<std::size_t> order = used;
  merge_sort(order, [&](std::size_t i, std::size_t j) { return cmp(pool[i], pool[j]); });
  std::vector<std::int64_t> pos(pool.size(), -1);
  Over<E> out;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k && cmp(out.elems.back(), pool[order[k]]) == 0) {
      pos[order[k]] = static_cast<std::int64_t>(out.elems.size() - 1);
      continue;
    }
    pos[order[k]] = static_cast<std::int64_t>(out.elems.size());
    out.elems.push_back(pool[order[k]]);
  }
  out.shape = d.map_elems(shape, [&](std::int64_t i) { return pos[static_cast<std::size_t>(i)]; });
  return out;
}

// ---------------------------------------------------------------------------------------------
// Shipped predilators

class IdPredilator final : public Predilator {
 public:
  using Predilator::compare;
  using Predilator::parse;
  using Predilator::print;

  std::string name() const override { return "id"; }
  bool valid(const Value& v, std::size_t base) const override {
    return v.is_elem() && v.n >= 0 && static_cast<std::size_t>(v.n) < base;
  }
  Ordering compare(const Value& a, const Value& b, ElemCmp e) const override { return e(a.n, b.n); }
  std::size_t size(const Value&) const override { return 1; }
  std::vector<Value> enumerate(std::size_t base, std::size_t max_size) const override {
    std::vector<Value> out;
    if (max_size >= 1)
      for (std::size_t i = 0; i < base; ++i) out.push_back(Value::elem(static_cast<std::int64_t>(i)));
    return out;
  }
  bool has_least_above() const override { return true; }
  std::optional<Value> least_above(std::size_t base, const std::vector<Value>& vals) const override {
    std::int64_t next = 0;
    for (const auto& v : vals) next = std::max(next, v.n + 1);
    if (static_cast<std::size_t>(next) >= base) return std::nullopt;
    return Value::elem(next);
  }
  Sexpr print(const Value& v, ElemPrint elem) const override { return elem(v.n); }
  Value parse(const Sexpr& e, ElemParse elem) const override { return Value::elem(elem(e)); }
};

// The order a constant predilator maps every order to.
struct ConstOrder {
  enum class Kind { finite, integers, rationals };
  Kind kind = Kind::finite;
  std::int64_t n = 0;  // size when finite

  static ConstOrder finite(std::int64_t k) { return {Kind::finite, k}; }
  static ConstOrder integers() { return {Kind::integers, 0}; }
  static ConstOrder rationals() { return {Kind::rationals, 0}; }

  std::string name() const {
    switch (kind) {
      case Kind::finite: return std::to_string(n);
      case Kind::integers: return "Z";
      case Kind::rationals: return "Q";
    }
    return "?";
  }
};

class ConstPredilator final : public Predilator {
 public:
  using Predilator::compare;
  using Predilator::parse;
  using Predilator::print;

  explicit ConstPredilator(ConstOrder beta) : beta_(beta) {}

  const ConstOrder& order() const { return beta_; }

  static Value rational(std::int64_t p, std::int64_t q) {
    if (q == 0) throw std::invalid_argument("rational with zero denominator");
    if (q < 0) p = -p, q = -q;
    auto g = std::gcd(p < 0 ? -p : p, q);
    if (g == 0) g = 1;
    return Value::node(tag::rational, {Value::num(p / g), Value::num(q / g)});
  }

  std::string name() const override { return "const:" + beta_.name(); }

  bool valid(const Value& v, std::size_t) const override {
    switch (beta_.kind) {
      case ConstOrder::Kind::finite: return v.is_num() && v.n >= 0 && v.n < beta_.n;
      case ConstOrder::Kind::integers: return v.is_num();
      case ConstOrder::Kind::rationals:
        return v.is_node(tag::rational) && v.kids.size() == 2 && v.kids[1].n > 0 &&
               std::gcd(v.kids[0].n < 0 ? -v.kids[0].n : v.kids[0].n, v.kids[1].n) == 1;
    }
    return false;
  }
  Ordering compare(const Value& a, const Value& b, ElemCmp) const override {
    if (beta_.kind != ConstOrder::Kind::rationals) return a.n <=> b.n;
    __int128 l = static_cast<__int128>(a.kids[0].n) * b.kids[1].n;
    __int128 r = static_cast<__int128>(b.kids[0].n) * a.kids[1].n;
    return l <=> r;
  }
  Value map_elems(const Value& v, ElemMap) const override { return v; }
  std::vector<std::size_t> supp(const Value&) const override { return {}; }
  std::size_t size(const Value& v) const override {
    switch (beta_.kind) {
      case ConstOrder::Kind::finite: return 1;
      case ConstOrder::Kind::integers: return 1 + static_cast<std::size_t>(v.n < 0 ? -v.n : v.n);
      case ConstOrder::Kind::rationals:
        return static_cast<std::size_t>((v.kids[0].n < 0 ? -v.kids[0].n : v.kids[0].n) + v.kids[1].n);
    }
    return 1;
  }
  std::vector<Value> enumerate(std::size_t, std::size_t max_size) const override {
    std::vector<Value> out;
    if (max_size == 0) return out;
    auto m = static_cast<std::int64_t>(max_size);
    switch (beta_.kind) {
      case ConstOrder::Kind::finite:
        for (std::int64_t i = 0; i < beta_.n; ++i) out.push_back(Value::num(i));
        break;
      case ConstOrder::Kind::integers:
        for (std::int64_t z = -(m - 1); z <= m - 1; ++z) out.push_back(Value::num(z));
        break;
      case ConstOrder::Kind::rationals:
        for (std::int64_t q = 1; q <= m; ++q)
          for (std::int64_t p = -(m - q); p <= m - q; ++p)
            if (std::gcd(p < 0 ? -p : p, q) == 1) out.push_back(rational(p, q));
        break;
    }
    canonical(out);
    return out;
  }
  bool has_least_above() const override { return beta_.kind != ConstOrder::Kind::rationals; }
  std::optional<Value> least_above(std::size_t, const std::vector<Value>& vals) const override {
    if (beta_.kind == ConstOrder::Kind::rationals) throw Unsupported("const:Q has no least elements");
    if (vals.empty()) {
      if (beta_.kind == ConstOrder::Kind::integers || beta_.n == 0) return std::nullopt;
      return Value::num(0);
    }
    std::int64_t m = vals.front().n;
    for (const auto& v : vals) m = std::max(m, v.n);
    if (beta_.kind == ConstOrder::Kind::finite && m + 1 >= beta_.n) return std::nullopt;
    return Value::num(m + 1);
  }
  Sexpr print(const Value& v, ElemPrint) const override {
    if (beta_.kind != ConstOrder::Kind::rationals) return Sexpr::number(v.n);
    if (v.kids[1].n == 1) return Sexpr::number(v.kids[0].n);
    return Sexpr::make_atom(std::to_string(v.kids[0].n) + "/" + std::to_string(v.kids[1].n));
  }
  Value parse(const Sexpr& e, ElemParse) const override {
    if (beta_.kind != ConstOrder::Kind::rationals) return Value::num(e.as_int());
    if (e.list) throw ParseError("expected rational atom");
    auto slash = e.atom.find('/');
    if (slash == std::string::npos) return rational(e.as_int(), 1);
    auto p = Sexpr::make_atom(e.atom.substr(0, slash)).as_int();
    auto q = Sexpr::make_atom(e.atom.substr(slash + 1)).as_int();
    if (q == 0) throw ParseError("zero denominator");
    return rational(p, q);
  }

 private:
  ConstOrder beta_;
};

// D1 + D2: all left-tagged values below all right-tagged ones.
class SumPredilator final : public Predilator {
 public:
  using Predilator::compare;
  using Predilator::parse;
  using Predilator::print;

  SumPredilator(PredPtr d1, PredPtr d2) : d1_(std::move(d1)), d2_(std::move(d2)) {}

  const Predilator& left() const { return *d1_; }
  const Predilator& right() const { return *d2_; }

  static Value inl(Value v) { return Value::node(tag::inl, {std::move(v)}); }
  static Value inr(Value v) { return Value::node(tag::inr, {std::move(v)}); }

  std::string name() const override { return "sum:" + d1_->name() + "," + d2_->name(); }
  bool valid(const Value& v, std::size_t base) const override {
    if (v.kids.size() != 1) return false;
    if (v.is_node(tag::inl)) return d1_->valid(v.kids[0], base);
    if (v.is_node(tag::inr)) return d2_->valid(v.kids[0], base);
    return false;
  }
  Ordering compare(const Value& a, const Value& b, ElemCmp e) const override {
    if (a.n != b.n) return a.n <=> b.n;
    return (a.n == tag::inl ? d1_ : d2_)->compare(a.kids[0], b.kids[0], e);
  }
  Value map_elems(const Value& v, ElemMap f) const override {
    return Value::node(v.n, {(v.n == tag::inl ? d1_ : d2_)->map_elems(v.kids[0], f)});
  }
  std::vector<std::size_t> supp(const Value& v) const override {
    return (v.n == tag::inl ? d1_ : d2_)->supp(v.kids[0]);
  }
  std::size_t size(const Value& v) const override {
    return 1 + (v.n == tag::inl ? d1_ : d2_)->size(v.kids[0]);
  }
  std::vector<Value> enumerate(std::size_t base, std::size_t max_size) const override {
    std::vector<Value> out;
    if (max_size < 2) return out;
    for (auto& v : d1_->enumerate(base, max_size - 1)) out.push_back(inl(std::move(v)));
    for (auto& v : d2_->enumerate(base, max_size - 1)) out.push_back(inr(std::move(v)));
    canonical(out);
    return out;
  }
  bool has_least_above() const override { return d1_->has_least_above() && d2_->has_least_above(); }
  std::optional<Value> least_above(std::size_t base, const std::vector<Value>& vals) const override {
    std::vector<Value> lefts, rights;
    for (const auto& v : vals) (v.n == tag::inl ? lefts : rights).push_back(v.kids[0]);
    if (rights.empty()) {
      if (auto l = d1_->least_above(base, lefts)) return inl(*l);
      if (auto r = d2_->least_above(base, {})) return inr(*r);
      return std::nullopt;
    }
    if (auto r = d2_->least_above(base, rights)) return inr(*r);
    return std::nullopt;
  }
  Sexpr print(const Value& v, ElemPrint elem) const override {
    bool l = v.n == tag::inl;
    return Sexpr::make_list({Sexpr::make_atom(l ? "l" : "r"), (l ? d1_ : d2_)->print(v.kids[0], elem)});
  }
  Value parse(const Sexpr& e, ElemParse elem) const override {
    if (e.arity() != 2) throw ParseError("expected (l v) or (r v)");
    if (e.headed("l")) return inl(d1_->parse(e.items[1], elem));
    if (e.headed("r")) return inr(d2_->parse(e.items[1], elem));
    throw ParseError("expected (l v) or (r v)");
  }

 private:
  PredPtr d1_, d2_;
};

// omega o D: weakly decreasing sequences of D-values.
class OmegaPredilator final : public Predilator {
 public:
  using Predilator::compare;
  using Predilator::parse;
  using Predilator::print;

  explicit OmegaPredilator(PredPtr d) : d_(std::move(d)) {}

  const Predilator& inner() const { return *d_; }

  std::string name() const override { return "omega:" + d_->name(); }
  bool valid(const Value& v, std::size_t base) const override {
    if (!v.is_node(tag::seq)) return false;
    for (std::size_t i = 0; i < v.kids.size(); ++i) {
      if (!d_->valid(v.kids[i], base)) return false;
      if (i && d_->compare(v.kids[i - 1], v.kids[i]) < 0) return false;
    }
    return true;
  }
  Ordering compare(const Value& a, const Value& b, ElemCmp e) const override {
    return omega_power_cmp(a.kids, b.kids, [&](const Value& x, const Value& y) { return d_->compare(x, y, e); });
  }
  Value map_elems(const Value& v, ElemMap f) const override {
    Value out = Value::node(tag::seq);
    for (const auto& k : v.kids) out.kids.push_back(d_->map_elems(k, f));
    return out;
  }
  std::vector<std::size_t> supp(const Value& v) const override {
    std::vector<std::size_t> out;
    for (const auto& k : v.kids) {
      auto s = d_->supp(k);
      out.insert(out.end(), s.begin(), s.end());
    }
    return sorted_unique(std::move(out));
  }
  std::size_t size(const Value& v) const override {
    std::size_t n = 1;
    for (const auto& k : v.kids) n += d_->size(k);
    return n;
  }
  std::vector<Value> enumerate(std::size_t base, std::size_t max_size) const override {
    std::vector<Value> out;
    if (max_size == 0) return out;
    auto elems = d_->enumerate(base, max_size - 1);
    merge_sort(elems, [&](const Value& a, const Value& b) { return d_->compare(b, a); });
    for (auto& s : weakly_decreasing_sequences(elems, max_size - 1, [&](const Value& x) { return d_->size(x); }))
      out.push_back(Value::node(tag::seq, std::move(s)));
    canonical(out);
    return out;
  }
  Sexpr print(const Value& v, ElemPrint elem) const override {
    std::vector<Sexpr> xs{Sexpr::make_atom("s")};
    for (const auto& k : v.kids) xs.push_back(d_->print(k, elem));
    return Sexpr::make_list(std::move(xs));
  }
  Value parse(const Sexpr& e, ElemParse elem) const override {
    if (!e.headed("s")) throw ParseError("expected (s ...)");
    Value v = Value::node(tag::seq);
    for (std::size_t i = 1; i < e.items.size(); ++i) v.kids.push_back(d_->parse(e.items[i], elem));
    return v;
  }

 private:
  PredPtr d_;
};

// E(X) = (D(X) + 1 + D(X)) x omega, with tuples <0,s,n> < <1,n> < <2,s,n> ordered lexicographically.
class BumpPredilator final : public Predilator {
 public:
  using Predilator::compare;
  using Predilator::parse;
  using Predilator::print;

  explicit BumpPredilator(PredPtr d) : d_(std::move(d)) {}

  const Predilator& inner() const { return *d_; }

  static Value low(Value s, std::int64_t n) { return Value::node(tag::bump0, {std::move(s), Value::num(n)}); }
  static Value mid(std::int64_t n) { return Value::node(tag::bump1, {Value::num(n)}); }
  static Value high(Value s, std::int64_t n) { return Value::node(tag::bump2, {std::move(s), Value::num(n)}); }

  // The value with the same tag and D-part and counter n + 1.
  static Value next(const Value& v) {
    Value out = v;
    out.kids.back().n += 1;
    return out;
  }

  std::string name() const override { return "bump:" + d_->name(); }
  bool valid(const Value& v, std::size_t base) const override {
    if (v.is_node(tag::bump1)) return v.kids.size() == 1 && v.kids[0].is_num() && v.kids[0].n >= 0;
    if (!v.is_node(tag::bump0) && !v.is_node(tag::bump2)) return false;
    return v.kids.size() == 2 && d_->valid(v.kids[0], base) && v.kids[1].is_num() && v.kids[1].n >= 0;
  }
  Ordering compare(const Value& a, const Value& b, ElemCmp e) const override {
    if (a.n != b.n) return a.n <=> b.n;
    if (a.n == tag::bump1) return a.kids[0].n <=> b.kids[0].n;
    auto c = d_->compare(a.kids[0], b.kids[0], e);
    if (c != 0) return c;
    return a.kids[1].n <=> b.kids[1].n;
  }
  Value map_elems(const Value& v, ElemMap f) const override {
    if (v.n == tag::bump1) return v;
    return Value::node(v.n, {d_->map_elems(v.kids[0], f), v.kids[1]});
  }
  std::vector<std::size_t> supp(const Value& v) const override {
    if (v.n == tag::bump1) return {};
    return d_->supp(v.kids[0]);
  }
  std::size_t size(const Value& v) const override {
    if (v.n == tag::bump1) return 1 + static_cast<std::size_t>(v.kids[0].n);
    return 1 + d_->size(v.kids[0]) + static_cast<std::size_t>(v.kids[1].n);
  }
  std::vector<Value> enumerate(std::size_t base, std::size_t max_size) const override {
    std::vector<Value> out;
    if (max_size == 0) return out;
    for (std::size_t n = 0; n + 1 <= max_size; ++n) out.push_back(mid(static_cast<std::int64_t>(n)));
    if (max_size >= 2)
      for (const auto& s : d_->enumerate(base, max_size - 1)) {
        std::size_t used = 1 + d_->size(s);
        for (std::size_t n = 0; used + n <= max_size; ++n) {
          out.push_back(low(s, static_cast<std::int64_t>(n)));
          out.push_back(high(s, static_cast<std::int64_t>(n)));
        }
      }
    canonical(out);
    return out;
  }
  bool has_least_above() const override { return d_->has_least_above(); }
  std::optional<Value> least_above(std::size_t base, const std::vector<Value>& vals) const override {
    if (vals.empty()) {
      if (auto s = d_->least_above(base, {})) return low(*s, 0);
      return mid(0);
    }
    const Value* top = &vals.front();
    for (const auto& v : vals)
      if (compare(v, *top) > 0) top = &v;
    return next(*top);
  }
  Sexpr print(const Value& v, ElemPrint elem) const override {
    if (v.n == tag::bump1) return Sexpr::make_list({Sexpr::make_atom("b1"), Sexpr::number(v.kids[0].n)});
    return Sexpr::make_list({Sexpr::make_atom(v.n == tag::bump0 ? "b0" : "b2"), d_->print(v.kids[0], elem),
                             Sexpr::number(v.kids[1].n)});
  }
  Value parse(const Sexpr& e, ElemParse elem) const override {
    if (e.headed("b1") && e.arity() == 2) return mid(e.items[1].as_int());
    if ((e.headed("b0") || e.headed("b2")) && e.arity() == 3) {
      auto s = d_->parse(e.items[1], elem);
      auto n = e.items[2].as_int();
      return e.headed("b0") ? low(std::move(s), n) : high(std::move(s), n);
    }
    throw ParseError("expected (b0 v n), (b1 n) or (b2 v n)");
  }

 private:
  PredPtr d_;
};

struct TreeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A finite tree in which every node has 0 or 2 children, stored by node index.
class BinaryTree {
 public:
  struct Node {
    std::int64_t parent = -1;
    bool leaf = true;
    std::int64_t child[2] = {-1, -1};
    std::vector<int> address;  // path from the root as a 0/1 sequence
  };

  BinaryTree() : BinaryTree(std::vector<std::pair<std::int64_t, bool>>{{-1, true}}) {}

  // nodes[i] = (parent index or -1, is_leaf); the first listed child of a node is its 0-child.
  explicit BinaryTree(const std::vector<std::pair<std::int64_t, bool>>& nodes) {
    if (nodes.empty()) throw TreeError("tree: no nodes");
    nodes_.resize(nodes.size());
    std::int64_t root = -1;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      auto [p, leaf] = nodes[i];
      nodes_[i].parent = p;
      nodes_[i].leaf = leaf;
      if (p < 0) {
        if (root >= 0) throw TreeError("tree: more than one root");
        root = static_cast<std::int64_t>(i);
        continue;
      }
      if (static_cast<std::size_t>(p) >= nodes.size()) throw TreeError("tree: parent index out of range");
      auto& par = nodes_[static_cast<std::size_t>(p)];
      if (par.child[0] < 0)
        par.child[0] = static_cast<std::int64_t>(i);
      else if (par.child[1] < 0)
        par.child[1] = static_cast<std::int64_t>(i);
      else
        throw TreeError("tree: node with more than two children");
    }
    if (root < 0) throw TreeError("tree: no root");
    root_ = root;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const auto& nd = nodes_[i];
      bool has0 = nd.child[0] >= 0, has1 = nd.child[1] >= 0;
      if (nd.leaf && has0) throw TreeError("tree: leaf with children");
      if (!nd.leaf && !(has0 && has1)) throw TreeError("tree: internal node without two children");
    }
    std::size_t seen = 0;
    rank_.assign(nodes_.size(), -1);
    std::function<void(std::int64_t)> visit = [&](std::int64_t v) {
      auto& nd = nodes_[static_cast<std::size_t>(v)];
      for (int c = 0; c < 2; ++c)
        if (nd.child[c] >= 0) {
          auto& ch = nodes_[static_cast<std::size_t>(nd.child[c])];
          ch.address = nd.address;
          ch.address.push_back(c);
          visit(nd.child[c]);
        }
      rank_[static_cast<std::size_t>(v)] = static_cast<std::int64_t>(seen++);
    };
    visit(root_);
    if (seen != nodes_.size()) throw TreeError("tree: not connected");
  }

  // Text format: one node per line, "<parent> <L|I>", parent -1 for the root; '#' starts a comment.
  static BinaryTree parse(const std::string& text) {
    std::vector<std::pair<std::int64_t, bool>> nodes;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
      std::istringstream ls(line);
      std::int64_t parent;
      std::string flag;
      if (!(ls >> parent)) continue;
      if (!(ls >> flag) || (flag != "L" && flag != "I")) throw TreeError("tree: expected L or I flag");
      nodes.emplace_back(parent, flag == "L");
    }
    return BinaryTree(nodes);
  }

  // A complete description in the text format.
  std::string to_text() const {
    std::string out;
    for (const auto& nd : nodes_) out += std::to_string(nd.parent) + (nd.leaf ? " L\n" : " I\n");
    return out;
  }

  std::size_t size() const { return nodes_.size(); }
  std::int64_t root() const { return root_; }
  const Node& node(std::int64_t i) const { return nodes_.at(static_cast<std::size_t>(i)); }
  bool is_leaf(std::int64_t i) const { return node(i).leaf; }
  std::int64_t child(std::int64_t i, int c) const { return node(i).child[c]; }

  // Tree order: proper extensions and lexicographically smaller nodes come first (children before
  // their parent, left before right).
  std::int64_t rank(std::int64_t i) const { return rank_.at(static_cast<std::size_t>(i)); }
  Ordering compare(std::int64_t a, std::int64_t b) const { return rank(a) <=> rank(b); }

  std::string address_string(std::int64_t i) const {
    std::string s = "<";
    for (int c : node(i).address) s += static_cast<char>('0' + c);
    return s + ">";
  }

 private:
  std::vector<Node> nodes_;
  std::vector<std::int64_t> rank_;
  std::int64_t root_ = 0;
};

// Leaves l, and t(x, y) for internal nodes t.
class TreePredilator final : public Predilator {
 public:
  using Predilator::compare;
  using Predilator::parse;
  using Predilator::print;

  explicit TreePredilator(BinaryTree t, std::string label = "tree") : t_(std::move(t)), label_(std::move(label)) {}

  const BinaryTree& tree() const { return t_; }

  static Value leaf(std::int64_t l) { return Value::node(tag::tree_leaf, {Value::num(l)}); }
  static Value apply(std::int64_t t, std::int64_t x, std::int64_t y) {
    return Value::node(tag::tree_node, {Value::num(t), Value::elem(x), Value::elem(y)});
  }

  std::string name() const override { return label_; }
  bool valid(const Value& v, std::size_t base) const override {
    if (v.is_node(tag::tree_leaf))
      return v.kids.size() == 1 && in_tree(v.kids[0].n) && t_.is_leaf(v.kids[0].n);
    if (!v.is_node(tag::tree_node) || v.kids.size() != 3) return false;
    auto b = static_cast<std::int64_t>(base);
    return in_tree(v.kids[0].n) && !t_.is_leaf(v.kids[0].n) && v.kids[1].is_elem() && v.kids[2].is_elem() &&
           v.kids[1].n >= 0 && v.kids[1].n < b && v.kids[2].n >= 0 && v.kids[2].n < b;
  }
  Ordering compare(const Value& a, const Value& b, ElemCmp e) const override {
    auto c = t_.compare(a.kids[0].n, b.kids[0].n);
    if (c != 0 || a.is_node(tag::tree_leaf)) return c;
    c = e(a.kids[1].n, b.kids[1].n);
    if (c != 0) return c;
    return e(a.kids[2].n, b.kids[2].n);
  }
  std::size_t size(const Value& v) const override { return v.is_node(tag::tree_leaf) ? 1 : 3; }
  std::vector<Value> enumerate(std::size_t base, std::size_t max_size) const override {
    std::vector<Value> out;
    if (max_size == 0) return out;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      auto id = static_cast<std::int64_t>(i);
      if (t_.is_leaf(id)) {
        out.push_back(leaf(id));
      } else if (max_size >= 3) {
        for (std::size_t x = 0; x < base; ++x)
          for (std::size_t y = 0; y < base; ++y)
            out.push_back(apply(id, static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)));
      }
    }
    canonical(out);
    return out;
  }
  Sexpr print(const Value& v, ElemPrint elem) const override {
    std::vector<Sexpr> xs{Sexpr::make_atom("t"), Sexpr::number(v.kids[0].n)};
    if (v.is_node(tag::tree_node)) {
      xs.push_back(elem(v.kids[1].n));
      xs.push_back(elem(v.kids[2].n));
    }
    return Sexpr::make_list(std::move(xs));
  }
  Value parse(const Sexpr& e, ElemParse elem) const override {
    if (!e.headed("t") || (e.arity() != 2 && e.arity() != 4)) throw ParseError("expected (t i) or (t i x y)");
    auto id = e.items[1].as_int();
    if (!in_tree(id)) throw ParseError("tree node out of range");
    if (e.arity() == 2) return leaf(id);
    return apply(id, elem(e.items[2]), elem(e.items[3]));
  }

 private:
  bool in_tree(std::int64_t i) const { return i >= 0 && static_cast<std::size_t>(i) < t_.size(); }
  BinaryTree t_;
  std::string label_;
};

// D o (alpha + Id): values of D over alpha + base; elements below alpha are constants.
class ShiftPredilator final : public Predilator {
 public:
  using Predilator::compare;
  using Predilator::parse;
  using Predilator::print;

  ShiftPredilator(PredPtr d, std::size_t alpha) : d_(std::move(d)), alpha_(static_cast<std::int64_t>(alpha)) {}

  std::string name() const override { return "shift:" + d_->name() + ":" + std::to_string(alpha_); }
  bool valid(const Value& v, std::size_t base) const override {
    return d_->valid(v, base + static_cast<std::size_t>(alpha_));
  }
  Ordering compare(const Value& a, const Value& b, ElemCmp e) const override {
    return d_->compare(a, b, [&](std::int64_t i, std::int64_t j) -> Ordering {
      if (i < alpha_ || j < alpha_) {
        if (i < alpha_ && j < alpha_) return i <=> j;
        return i < alpha_ ? Ordering::less : Ordering::greater;
      }
      return e(i - alpha_, j - alpha_);
    });
  }
  Value map_elems(const Value& v, ElemMap f) const override {
    return d_->map_elems(v, [&](std::int64_t i) { return i < alpha_ ? i : alpha_ + f(i - alpha_); });
  }
  std::vector<std::size_t> supp(const Value& v) const override {
    std::vector<std::size_t> out;
    for (auto i : d_->supp(v))
      if (static_cast<std::int64_t>(i) >= alpha_) out.push_back(i - static_cast<std::size_t>(alpha_));
    return out;
  }
  std::size_t size(const Value& v) const override { return d_->size(v); }
  std::vector<Value> enumerate(std::size_t base, std::size_t max_size) const override {
    return d_->enumerate(base + static_cast<std::size_t>(alpha_), max_size);
  }
  bool has_least_above() const override { return d_->has_least_above(); }
  std::optional<Value> least_above(std::size_t base, const std::vector<Value>& vals) const override {
    return d_->least_above(base + static_cast<std::size_t>(alpha_), vals);
  }
  Sexpr print(const Value& v, ElemPrint elem) const override {
    return d_->print(v, [&](std::int64_t i) {
      if (i < alpha_) return Sexpr::make_list({Sexpr::make_atom("k"), Sexpr::number(i)});
      return elem(i - alpha_);
    });
  }
  Value parse(const Sexpr& e, ElemParse elem) const override {
    return d_->parse(e, [&](const Sexpr& x) -> std::int64_t {
      if (x.headed("k") && x.arity() == 2) {
        auto i = x.items[1].as_int();
        if (i < 0 || i >= alpha_) throw ParseError("shift constant out of range");
        return i;
      }
      return alpha_ + elem(x);
    });
  }

 private:
  PredPtr d_;
  std::int64_t alpha_;
};

// D(X) = omega^X + omega x X: <0, s> with s weakly decreasing in X, and <1, <n, x>>, lexicographic.
class VeblenBasePredilator final : public Predilator {
 public:
  using Predilator::compare;
  using Predilator::parse;
  using Predilator::print;

  static Value power(std::vector<std::int64_t> xs) {
    Value v = Value::node(tag::v_power);
    for (auto x : xs) v.kids.push_back(Value::elem(x));
    return v;
  }
  static Value times(std::int64_t n, std::int64_t x) {
    return Value::node(tag::v_times, {Value::num(n), Value::elem(x)});
  }

  std::string name() const override { return "veblen"; }
  bool valid(const Value& v, std::size_t base) const override {
    auto in = [&](const Value& x) { return x.is_elem() && x.n >= 0 && static_cast<std::size_t>(x.n) < base; };
    if (v.is_node(tag::v_times)) return v.kids.size() == 2 && v.kids[0].is_num() && v.kids[0].n >= 0 && in(v.kids[1]);
    if (!v.is_node(tag::v_power)) return false;
    for (std::size_t i = 0; i < v.kids.size(); ++i) {
      if (!in(v.kids[i])) return false;
      if (i && v.kids[i - 1].n < v.kids[i].n) return false;
    }
    return true;
  }
  Ordering compare(const Value& a, const Value& b, ElemCmp e) const override {
    if (a.n != b.n) return a.n <=> b.n;
    if (a.n == tag::v_times) {
      if (a.kids[0].n != b.kids[0].n) return a.kids[0].n <=> b.kids[0].n;
      return e(a.kids[1].n, b.kids[1].n);
    }
    return omega_power_cmp(a.kids, b.kids, [&](const Value& x, const Value& y) { return e(x.n, y.n); });
  }
  std::size_t size(const Value& v) const override {
    if (v.is_node(tag::v_times)) return 2 + static_cast<std::size_t>(v.kids[0].n);
    return 1 + v.kids.size();
  }
  std::vector<Value> enumerate(std::size_t base, std::size_t max_size) const override {
    std::vector<Value> out;
    if (max_size == 0) return out;
    std::vector<std::int64_t> desc;
    for (std::size_t i = base; i-- > 0;) desc.push_back(static_cast<std::int64_t>(i));
    for (auto& s : weakly_decreasing_sequences(desc, max_size - 1, [](std::int64_t) { return std::size_t{1}; }))
      out.push_back(power(std::move(s)));
    for (std::size_t n = 0; n + 2 <= max_size; ++n)
      for (std::size_t x = 0; x < base; ++x)
        out.push_back(times(static_cast<std::int64_t>(n), static_cast<std::int64_t>(x)));
    canonical(out);
    return out;
  }
  Sexpr print(const Value& v, ElemPrint elem) const override {
    if (v.is_node(tag::v_times))
      return Sexpr::make_list({Sexpr::make_atom("v1"), Sexpr::number(v.kids[0].n), elem(v.kids[1].n)});
    std::vector<Sexpr> xs{Sexpr::make_atom("v0")};
    for (const auto& k : v.kids) xs.push_back(elem(k.n));
    return Sexpr::make_list(std::move(xs));
  }
  Value parse(const Sexpr& e, ElemParse elem) const override {
    if (e.headed("v1") && e.arity() == 3) return times(e.items[1].as_int(), elem(e.items[2]));
    if (!e.headed("v0")) throw ParseError("expected (v0 x ...) or (v1 n x)");
    Value v = Value::node(tag::v_power);
    for (std::size_t i = 1; i < e.items.size(); ++i) v.kids.push_back(Value::elem(elem(e.items[i])));
    return v;
  }
};

// Terms built from a big constant O, base elements (as indecomposable atoms below O), and
// omega-sums; the support is the set of atoms occurring. Its initial Bachmann-Howard fixed
// point reproduces the theta-terms of the Bachmann-Howard notation system.
class EpsilonPredilator final : public Predilator {
 public:
  using Predilator::compare;
  using Predilator::parse;
  using Predilator::print;

  static Value big() { return Value::node(tag::e_big); }
  static Value sum(std::vector<Value> exps) { return Value::node(tag::e_sum, std::move(exps)); }

  std::string name() const override { return "epsilon"; }

  bool valid(const Value& v, std::size_t base) const override {
    if (v.is_node(tag::e_big)) return v.kids.empty();
    if (v.is_elem()) return v.n >= 0 && static_cast<std::size_t>(v.n) < base;
    if (!v.is_node(tag::e_sum)) return false;
    if (v.kids.size() == 1 && (v.kids[0].is_elem() || v.kids[0].is_node(tag::e_big))) return false;
    for (std::size_t i = 0; i < v.kids.size(); ++i) {
      if (!valid(v.kids[i], base)) return false;
      if (i && compare(v.kids[i - 1], v.kids[i]) < 0) return false;
    }
    return true;
  }

  Ordering compare(const Value& a, const Value& b, ElemCmp e) const override {
    if (a.is_node(tag::e_sum) && b.is_node(tag::e_sum))
      return omega_power_cmp(a.kids, b.kids, [&](const Value& x, const Value& y) { return compare(x, y, e); });
    if (a.is_node(tag::e_sum)) {
      // sum vs atom or O: below iff empty or leading exponent below
      if (a.kids.empty()) return Ordering::less;
      return compare(a.kids[0], b, e) < 0 ? Ordering::less : Ordering::greater;
    }
    if (b.is_node(tag::e_sum)) return reverse(compare(b, a, e));
    bool abig = a.is_node(tag::e_big), bbig = b.is_node(tag::e_big);
    if (abig || bbig) {
      if (abig && bbig) return Ordering::equal;
      return abig ? Ordering::greater : Ordering::less;
    }
    return e(a.n, b.n);
  }

  std::size_t size(const Value& v) const override {
    if (!v.is_node(tag::e_sum) || v.kids.empty()) return 1;
    std::size_t n = 0;
    for (const auto& k : v.kids) n += 1 + size(k);
    return n;
  }

  std::vector<Value> enumerate(std::size_t base, std::size_t max_size) const override {
    std::vector<std::vector<Value>> by_size(max_size + 1);
    if (max_size == 0) return {};
    by_size[1].push_back(big());
    by_size[1].push_back(sum({}));
    for (std::size_t i = 0; i < base; ++i) by_size[1].push_back(Value::elem(static_cast<std::int64_t>(i)));
    for (std::size_t s = 2; s <= max_size; ++s) {
      // all exponents of size <= s-1, descending
      std::vector<Value> exps;
      for (std::size_t t = 1; t < s; ++t) exps.insert(exps.end(), by_size[t].begin(), by_size[t].end());
      merge_sort(exps, [&](const Value& x, const Value& y) { return compare(y, x); });
      for (auto& seq : weakly_decreasing_sequences(exps, s, [&](const Value& x) { return 1 + size(x); })) {
        if (seq.empty()) continue;
        Value v = sum(std::move(seq));
        if (size(v) != s || !valid(v, base)) continue;
        by_size[s].push_back(std::move(v));
      }
    }
    std::vector<Value> out;
    for (auto& b : by_size) out.insert(out.end(), b.begin(), b.end());
    canonical(out);
    return out;
  }

  Sexpr print(const Value& v, ElemPrint elem) const override {
    if (v.is_node(tag::e_big)) return Sexpr::make_atom("O");
    if (v.is_elem()) return elem(v.n);
    std::vector<Sexpr> xs{Sexpr::make_atom("+")};
    for (const auto& k : v.kids) xs.push_back(Sexpr::make_list({Sexpr::make_atom("w"), print(k, elem)}));
    return Sexpr::make_list(std::move(xs));
  }
  Value parse(const Sexpr& e, ElemParse elem) const override {
    if (e.is_atom("O")) return big();
    if (e.headed("+")) {
      Value v = sum({});
      for (std::size_t i = 1; i < e.items.size(); ++i) {
        const auto& w = e.items[i];
        if (!w.headed("w") || w.arity() != 2) throw ParseError("expected (w T)");
        v.kids.push_back(parse(w.items[1], elem));
      }
      return v;
    }
    return Value::elem(elem(e));
  }
};

}  // namespace dseq
