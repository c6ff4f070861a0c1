#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dseq/order.hpp"
#include "dseq/predilator.hpp"
#include "dseq/termination.hpp"

namespace dseq {

using Nat = boost::multiprecision::cpp_int;

struct GoodsteinError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------------------------
// G: sums (1+X)^g0 (1+d0) + ... with strictly descending exponents in G(X) and coefficients in X.

namespace gterm {

inline Value zero() { return Value::node(tag::g_sum); }
inline Value term(Value exp, std::int64_t coef) { return Value::node(tag::g_term, {std::move(exp), Value::elem(coef)}); }
inline Value sum(std::vector<Value> terms) { return Value::node(tag::g_sum, std::move(terms)); }
// (1+X)^0 (1+x)
inline Value unit(std::int64_t x) { return sum({term(zero(), x)}); }

inline const Value& exp(const Value& t) { return t.kids[0]; }
inline std::int64_t coef(const Value& t) { return t.kids[1].n; }

inline Ordering cmp(const Value& a, const Value& b, ElemCmp e) {
  return omega_power_cmp(a.kids, b.kids, [&](const Value& s, const Value& t) {
    auto c = cmp(exp(s), exp(t), e);
    if (c != 0) return c;
    return e(coef(s), coef(t));
  });
}
inline Ordering cmp(const Value& a, const Value& b) {
  return cmp(a, b, [](std::int64_t i, std::int64_t j) { return i <=> j; });
}

inline std::size_t size(const Value& v) {
  if (v.kids.empty()) return 1;
  std::size_t n = 0;
  for (const auto& t : v.kids) n += size(exp(t)) + 1;
  return n;
}

inline std::size_t height(const Value& v) {
  std::size_t h = 0;
  for (const auto& t : v.kids) h = std::max(h, height(exp(t)));
  return 1 + h;
}

}  // namespace gterm

class GoodsteinPredilator final : public Predilator {
 public:
  using Predilator::compare;
  using Predilator::parse;
  using Predilator::print;

  std::string name() const override { return "goodstein"; }

  bool valid(const Value& v, std::size_t base) const override {
    if (!v.is_node(tag::g_sum)) return false;
    for (std::size_t i = 0; i < v.kids.size(); ++i) {
      const auto& t = v.kids[i];
      if (!t.is_node(tag::g_term) || t.kids.size() != 2 || !t.kids[1].is_elem()) return false;
      if (t.kids[1].n < 0 || static_cast<std::size_t>(t.kids[1].n) >= base) return false;
      if (!valid(t.kids[0], base)) return false;
      if (i && gterm::cmp(gterm::exp(v.kids[i - 1]), gterm::exp(t)) <= 0) return false;
    }
    return true;
  }
  Ordering compare(const Value& a, const Value& b, ElemCmp e) const override { return gterm::cmp(a, b, e); }
  std::size_t size(const Value& v) const override { return gterm::size(v); }

  std::vector<Value> enumerate(std::size_t base, std::size_t max_size) const override {
    std::vector<Value> all;
    if (max_size == 0) return all;
    all.push_back(gterm::zero());
    for (std::size_t s = 2; s <= max_size; ++s) {
      std::vector<Value> exps;
      for (const auto& v : all)
        if (gterm::size(v) < s) exps.push_back(v);
      merge_sort(exps, [](const Value& x, const Value& y) { return gterm::cmp(y, x); });
      std::vector<Value> next{gterm::zero()};
      std::vector<Value> cur;
      std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t left) {
        for (std::size_t i = from; i < exps.size(); ++i) {
          std::size_t c = gterm::size(exps[i]) + 1;
          if (c > left) continue;
          for (std::size_t d = 0; d < base; ++d) {
            cur.push_back(gterm::term(exps[i], static_cast<std::int64_t>(d)));
            next.push_back(gterm::sum(cur));
            rec(i + 1, left - c);
            cur.pop_back();
          }
        }
      };
      rec(0, s);
      all = std::move(next);
    }
    canonical(all);
    return all;
  }

  bool has_least_above() const override { return true; }
  std::optional<Value> least_above(std::size_t base, const std::vector<Value>& vals) const override;

  Sexpr print(const Value& v, ElemPrint elem) const override {
    std::vector<Sexpr> xs{Sexpr::make_atom("+")};
    for (const auto& t : v.kids)
      xs.push_back(Sexpr::make_list({Sexpr::make_atom("g"), print(gterm::exp(t), elem), elem(gterm::coef(t))}));
    return Sexpr::make_list(std::move(xs));
  }
  Value parse(const Sexpr& e, ElemParse elem) const override {
    if (!e.headed("+")) throw ParseError("expected (+ (g e c) ...)");
    Value v = gterm::zero();
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      const auto& t = e.items[i];
      if (!t.headed("g") || t.arity() != 3) throw ParseError("expected (g e c)");
      v.kids.push_back(gterm::term(parse(t.items[1], elem), elem(t.items[2])));
    }
    return v;
  }
};

// ---------------------------------------------------------------------------------------------
// W: sums (1+X)^m0 (1+d0) + ... with strictly descending natural exponents.

namespace wterm {

inline Value zero() { return Value::node(tag::w_sum); }
inline Value term(std::int64_t m, std::int64_t coef) {
  return Value::node(tag::w_term, {Value::num(m), Value::elem(coef)});
}
inline Value sum(std::vector<Value> terms) { return Value::node(tag::w_sum, std::move(terms)); }
inline std::int64_t exp(const Value& t) { return t.kids[0].n; }
inline std::int64_t coef(const Value& t) { return t.kids[1].n; }

inline Ordering cmp(const Value& a, const Value& b, ElemCmp e) {
  return omega_power_cmp(a.kids, b.kids, [&](const Value& s, const Value& t) {
    if (exp(s) != exp(t)) return exp(s) <=> exp(t);
    return e(coef(s), coef(t));
  });
}
inline Ordering cmp(const Value& a, const Value& b) {
  return cmp(a, b, [](std::int64_t i, std::int64_t j) { return i <=> j; });
}

inline std::size_t size(const Value& v) {
  if (v.kids.empty()) return 1;
  std::size_t n = 0;
  for (const auto& t : v.kids) n += static_cast<std::size_t>(exp(t)) + 2;
  return n;
}

}  // namespace wterm

class WeakGoodsteinPredilator final : public Predilator {
 public:
  using Predilator::compare;
  using Predilator::parse;
  using Predilator::print;

  std::string name() const override { return "weak"; }

  bool valid(const Value& v, std::size_t base) const override {
    if (!v.is_node(tag::w_sum)) return false;
    for (std::size_t i = 0; i < v.kids.size(); ++i) {
      const auto& t = v.kids[i];
      if (!t.is_node(tag::w_term) || t.kids.size() != 2 || !t.kids[0].is_num() || !t.kids[1].is_elem()) return false;
      if (t.kids[0].n < 0 || t.kids[1].n < 0 || static_cast<std::size_t>(t.kids[1].n) >= base) return false;
      if (i && wterm::exp(v.kids[i - 1]) <= wterm::exp(t)) return false;
    }
    return true;
  }
  Ordering compare(const Value& a, const Value& b, ElemCmp e) const override { return wterm::cmp(a, b, e); }
  std::vector<std::size_t> supp(const Value& v) const override {
    std::vector<std::size_t> out;
    for (const auto& t : v.kids) out.push_back(static_cast<std::size_t>(wterm::coef(t)));
    return sorted_unique(std::move(out));
  }
  std::size_t size(const Value& v) const override { return wterm::size(v); }

  std::vector<Value> enumerate(std::size_t base, std::size_t max_size) const override {
    std::vector<Value> out;
    if (max_size == 0) return out;
    out.push_back(wterm::zero());
    std::vector<Value> cur;
    // exponents chosen in strictly descending order, starting from the largest affordable
    std::function<void(std::int64_t, std::size_t)> rec = [&](std::int64_t below, std::size_t left) {
      for (std::int64_t m = below - 1; m >= 0; --m) {
        std::size_t c = static_cast<std::size_t>(m) + 2;
        if (c > left) continue;
        for (std::size_t d = 0; d < base; ++d) {
          cur.push_back(wterm::term(m, static_cast<std::int64_t>(d)));
          out.push_back(wterm::sum(cur));
          rec(m, left - c);
          cur.pop_back();
        }
      }
    };
    rec(static_cast<std::int64_t>(max_size), max_size);
    canonical(out);
    return out;
  }

  bool has_least_above() const override { return true; }
  std::optional<Value> least_above(std::size_t base, const std::vector<Value>& vals) const override;

  Sexpr print(const Value& v, ElemPrint elem) const override {
    std::vector<Sexpr> xs{Sexpr::make_atom("+")};
    for (const auto& t : v.kids)
      xs.push_back(Sexpr::make_list({Sexpr::make_atom("m"), Sexpr::number(wterm::exp(t)), elem(wterm::coef(t))}));
    return Sexpr::make_list(std::move(xs));
  }
  Value parse(const Sexpr& e, ElemParse elem) const override {
    if (!e.headed("+")) throw ParseError("expected (+ (m k c) ...)");
    Value v = wterm::zero();
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      const auto& t = e.items[i];
      if (!t.headed("m") || t.arity() != 3) throw ParseError("expected (m k c)");
      auto m = t.items[1].as_int();
      if (m < 0) throw ParseError("negative exponent");
      v.kids.push_back(wterm::term(m, elem(t.items[2])));
    }
    return v;
  }
};

// ---------------------------------------------------------------------------------------------
// Base-b notation. A coefficient d stands for the digit 1 + d, so G(b-1) and W(b-1) code all naturals.

inline constexpr std::size_t default_bit_budget = 1u << 16;

namespace detail {
inline void check_base(unsigned b) {
  if (b < 2) throw GoodsteinError("base must be at least 2");
}
inline std::vector<std::pair<std::int64_t, unsigned>> digits(Nat k, unsigned b) {
  std::vector<std::pair<std::int64_t, unsigned>> out;  // (position, digit), ascending
  std::int64_t pos = 0;
  while (k > 0) {
    unsigned d = static_cast<unsigned>(k % b);
    if (d) out.emplace_back(pos, d);
    k /= b;
    ++pos;
  }
  return out;
}
// b^e * d, or nullopt beyond the bit budget
inline std::optional<Nat> power_times(unsigned b, const Nat& e, unsigned d, std::size_t bits) {
  double lb = std::log2(static_cast<double>(b));
  if (e > Nat(bits) || static_cast<double>(e) * lb > static_cast<double>(bits)) return std::nullopt;
  return boost::multiprecision::pow(Nat(b), static_cast<unsigned>(e)) * d;
}
}  // namespace detail

// Hereditary base-b notation of k, as an element of G(b-1).
inline Value encode_g(const Nat& k, unsigned b) {
  detail::check_base(b);
  auto ds = detail::digits(k, b);
  Value v = gterm::zero();
  for (auto it = ds.rbegin(); it != ds.rend(); ++it)
    v.kids.push_back(gterm::term(encode_g(Nat(it->first), b), static_cast<std::int64_t>(it->second) - 1));
  return v;
}

// Value of a G-term in base b; nullopt if it exceeds the bit budget. Base 1 only admits 0.
inline std::optional<Nat> eval_g(const Value& v, unsigned b, std::size_t bits = default_bit_budget) {
  if (v.kids.empty()) return Nat(0);
  if (b < 2) throw GoodsteinError("base 1 only evaluates the empty sum");
  Nat total = 0;
  for (const auto& t : v.kids) {
    if (gterm::coef(t) + 1 >= static_cast<std::int64_t>(b)) throw GoodsteinError("coefficient not a digit of the base");
    auto e = eval_g(gterm::exp(t), b, bits);
    if (!e) return std::nullopt;
    auto p = detail::power_times(b, *e, static_cast<unsigned>(gterm::coef(t) + 1), bits);
    if (!p) return std::nullopt;
    total += *p;
    if (boost::multiprecision::msb(total) > bits) return std::nullopt;
  }
  return total;
}

inline Value encode_w(const Nat& k, unsigned b) {
  detail::check_base(b);
  auto ds = detail::digits(k, b);
  Value v = wterm::zero();
  for (auto it = ds.rbegin(); it != ds.rend(); ++it)
    v.kids.push_back(wterm::term(it->first, static_cast<std::int64_t>(it->second) - 1));
  return v;
}

inline std::optional<Nat> eval_w(const Value& v, unsigned b, std::size_t bits = default_bit_budget) {
  if (v.kids.empty()) return Nat(0);
  if (b < 2) throw GoodsteinError("base 1 only evaluates the empty sum");
  Nat total = 0;
  for (const auto& t : v.kids) {
    if (wterm::coef(t) + 1 >= static_cast<std::int64_t>(b)) throw GoodsteinError("coefficient not a digit of the base");
    auto p = detail::power_times(b, Nat(wterm::exp(t)), static_cast<unsigned>(wterm::coef(t) + 1), bits);
    if (!p) return std::nullopt;
    total += *p;
  }
  return total;
}

// Textbook rendering, e.g. 5 in base 2 is "2^{2^{2^0}} + 2^0".
inline std::string hereditary_string(const Value& v, unsigned b) {
  if (v.kids.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < v.kids.size(); ++i) {
    const auto& t = v.kids[i];
    if (i) out += " + ";
    const auto& e = gterm::exp(t);
    out += std::to_string(b) + "^";
    out += e.kids.empty() ? std::string("0") : "{" + hereditary_string(e, b) + "}";
    if (gterm::coef(t) > 0) out += "*" + std::to_string(gterm::coef(t) + 1);
  }
  return out;
}

inline std::string plain_string(const Value& v, unsigned b) {
  if (v.kids.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < v.kids.size(); ++i) {
    const auto& t = v.kids[i];
    if (i) out += " + ";
    out += std::to_string(b) + "^" + std::to_string(wterm::exp(t));
    if (wterm::coef(t) > 0) out += "*" + std::to_string(wterm::coef(t) + 1);
  }
  return out;
}

inline std::optional<Value> GoodsteinPredilator::least_above(std::size_t base, const std::vector<Value>& vals) const {
  if (base == 0) {
    if (vals.empty()) return gterm::zero();
    return std::nullopt;
  }
  auto b = static_cast<unsigned>(base + 1);
  Nat next = 0;
  for (const auto& v : vals) {
    auto x = eval_g(v, b);
    if (!x) throw GoodsteinError("least_above: value beyond the evaluation budget");
    if (*x + 1 > next) next = *x + 1;
  }
  return encode_g(next, b);
}

inline std::optional<Value> WeakGoodsteinPredilator::least_above(std::size_t base,
                                                                 const std::vector<Value>& vals) const {
  if (base == 0) {
    if (vals.empty()) return wterm::zero();
    return std::nullopt;
  }
  auto b = static_cast<unsigned>(base + 1);
  Nat next = 0;
  for (const auto& v : vals) {
    auto x = eval_w(v, b);
    if (!x) throw GoodsteinError("least_above: value beyond the evaluation budget");
    if (*x + 1 > next) next = *x + 1;
  }
  return encode_w(next, b);
}

// ---------------------------------------------------------------------------------------------
// Predecessors in G(k) and W(k), computed on terms.

// Largest term of G(k) all of whose exponents lie below `e`, i.e. (1+X)^e - 1.
inline Value g_below_power(const Value& e, std::size_t k, std::size_t& fuel);

inline Value g_pred(const Value& v, std::size_t k, std::size_t& fuel) {
  if (v.kids.empty()) throw GoodsteinError("0 has no predecessor");
  if (k == 0) throw GoodsteinError("G(0) has no nonzero terms");
  Value out = v;
  Value last = out.kids.back();
  out.kids.pop_back();
  if (gterm::coef(last) > 0) out.kids.push_back(gterm::term(gterm::exp(last), gterm::coef(last) - 1));
  auto tail = g_below_power(gterm::exp(last), k, fuel);
  for (auto& t : tail.kids) out.kids.push_back(std::move(t));
  return out;
}

inline Value g_below_power(const Value& e, std::size_t k, std::size_t& fuel) {
  Value out = gterm::zero();
  Value cur = e;
  while (!cur.kids.empty()) {
    if (fuel == 0) throw GoodsteinError("predecessor expansion exceeds the term budget");
    --fuel;
    cur = g_pred(cur, k, fuel);
    out.kids.push_back(gterm::term(cur, static_cast<std::int64_t>(k) - 1));
  }
  return out;
}

inline Value g_pred(const Value& v, std::size_t k) {
  std::size_t fuel = 1u << 22;
  return g_pred(v, k, fuel);
}

inline Value w_pred(const Value& v, std::size_t k) {
  if (v.kids.empty()) throw GoodsteinError("0 has no predecessor");
  if (k == 0) throw GoodsteinError("W(0) has no nonzero terms");
  Value out = v;
  Value last = out.kids.back();
  out.kids.pop_back();
  if (wterm::coef(last) > 0) out.kids.push_back(wterm::term(wterm::exp(last), wterm::coef(last) - 1));
  for (std::int64_t m = wterm::exp(last) - 1; m >= 0; --m)
    out.kids.push_back(wterm::term(m, static_cast<std::int64_t>(k) - 1));
  return out;
}

// ---------------------------------------------------------------------------------------------
// Goodstein sequences. Stage n reads its member in base n+2; the next member is the base change
// to n+3 minus one.

struct SequenceMember {
  std::size_t stage = 0;
  unsigned base = 2;
  Value term;                    // over G(base-1) or W(base-1)
  std::optional<Nat> value;      // when within the bit budget
  std::optional<Nat> bumped;     // value after the base change, before subtracting one
  std::string notation;          // hereditary (or plain) base notation
};

inline SequenceMember classic_member(std::size_t stage, Value term, std::size_t bits = default_bit_budget) {
  SequenceMember m;
  m.stage = stage;
  m.base = static_cast<unsigned>(stage + 2);
  m.value = eval_g(term, m.base, bits);
  m.bumped = eval_g(term, m.base + 1, bits);
  m.notation = hereditary_string(term, m.base);
  m.term = std::move(term);
  return m;
}

// g at stage n+1 from g at stage n (as a term over G(n+1)); 0 is absorbing.
inline Value classic_step(const Value& g, std::size_t stage) {
  if (g.kids.empty()) return g;
  return g_pred(g, stage + 2);
}

inline std::vector<SequenceMember> classic_run(const Nat& seed, std::size_t max_steps,
                                               std::size_t bits = default_bit_budget) {
  std::vector<SequenceMember> out;
  Value g = encode_g(seed, 2);
  for (std::size_t n = 0;; ++n) {
    out.push_back(classic_member(n, g, bits));
    if (n == max_steps) break;
    g = classic_step(g, n);
  }
  return out;
}

inline SequenceMember weak_member(std::size_t stage, Value term, std::size_t bits = default_bit_budget) {
  SequenceMember m;
  m.stage = stage;
  m.base = static_cast<unsigned>(stage + 2);
  m.value = eval_w(term, m.base, bits);
  m.bumped = eval_w(term, m.base + 1, bits);
  m.notation = plain_string(term, m.base);
  m.term = std::move(term);
  return m;
}

inline Value weak_step(const Value& w, std::size_t stage) {
  if (w.kids.empty()) return w;
  return w_pred(w, stage + 2);
}

// Runs until the member is 0 or max_steps steps were taken.
inline std::vector<SequenceMember> weak_run(const Nat& seed, std::size_t max_steps,
                                            std::size_t bits = default_bit_budget, bool stop_at_zero = true) {
  std::vector<SequenceMember> out;
  Value w = encode_w(seed, 2);
  for (std::size_t n = 0;; ++n) {
    out.push_back(weak_member(n, w, bits));
    if (n == max_steps || (stop_at_zero && w.kids.empty())) break;
    w = weak_step(w, n);
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Embeddings between G and iterated omega powers.

using TowerTerm = Tower<std::size_t>;

// f_n : X' -> omega^<2n+1, X'>
inline TowerTerm aca_forward_f(std::size_t n, std::size_t x) {
  TowerTerm t = TowerTerm::of(std::vector<TowerTerm>{TowerTerm::of(x)});
  for (std::size_t i = 0; i < n; ++i) t = TowerTerm::of({TowerTerm::of({std::move(t)})});
  return t;
}

// g_n : G(X) -> omega^<2n+1, X'> with X' = X + {top}; an embedding on terms of height <= n.
inline TowerTerm aca_forward_g(std::size_t n, const Value& sigma, std::size_t top) {
  if (n == 0) return TowerTerm::of(std::vector<TowerTerm>{});
  std::vector<TowerTerm> seq;
  for (const auto& t : sigma.kids)
    seq.push_back(TowerTerm::of({aca_forward_g(n - 1, gterm::exp(t), top),
                                 aca_forward_f(n - 1, static_cast<std::size_t>(gterm::coef(t)))}));
  seq.push_back(TowerTerm::of({aca_forward_f(n - 1, top)}));
  return TowerTerm::of(std::move(seq));
}

// f_n : omega^<n, X> -> G(X + N), where x in X is the element x and m in N is the element offset + m.
inline Value aca_backward_f(std::size_t n, const TowerTerm& s, std::int64_t offset) {
  if (n == 0) return gterm::unit(static_cast<std::int64_t>(s.base));
  Value out = gterm::zero();
  std::size_t i = 0;
  while (i < s.seq.size()) {
    std::size_t k = 1;
    while (i + k < s.seq.size() && s.seq[i + k] == s.seq[i]) ++k;
    out.kids.push_back(gterm::term(aca_backward_f(n - 1, s.seq[i], offset), offset + static_cast<std::int64_t>(k)));
    i += k;
  }
  return out;
}

inline std::size_t g_height(const Value& sigma) { return gterm::height(sigma); }

}  // namespace dseq
