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

// Terms Omega^m0 * psi(x0) + ... with (m_i, x_i) weakly decreasing lexicographically. A term x is a
// member of psi(Omega^omega) when every coefficient argument x_i lies below x.

struct PNode;
using PTerm = std::shared_ptr<const PNode>;

struct PPart {
  std::int64_t m = 0;
  PTerm x;
};

struct PNode {
  std::vector<PPart> parts;
};

inline PTerm p_zero() {
  static const PTerm z = std::make_shared<PNode>();
  return z;
}

inline Ordering p_cmp(const PTerm& a, const PTerm& b);

inline Ordering p_part_cmp(const PPart& a, const PPart& b) {
  if (a.m != b.m) return a.m <=> b.m;
  return p_cmp(a.x, b.x);
}

inline Ordering p_cmp(const PTerm& a, const PTerm& b) {
  if (a == b) return Ordering::equal;
  return omega_power_cmp(a->parts, b->parts, p_part_cmp);
}

inline bool p_member_psi(const PTerm& t) {
  for (const auto& p : t->parts)
    if (p_cmp(p.x, t) >= 0) return false;
  return true;
}

inline bool p_valid(const PTerm& t) {
  for (std::size_t i = 0; i < t->parts.size(); ++i) {
    const auto& p = t->parts[i];
    if (p.m < 0 || !p_valid(p.x) || !p_member_psi(p.x)) return false;
    if (i > 0 && p_part_cmp(t->parts[i - 1], p) < 0) return false;
  }
  return true;
}

inline PTerm p_make(std::vector<PPart> parts) {
  auto t = std::make_shared<PNode>(PNode{std::move(parts)});
  if (!p_valid(t)) throw NotationError("P: malformed term");
  return t;
}

// Omega^m * psi(x)
inline PTerm p_mono(std::int64_t m, PTerm x) { return p_make({PPart{m, std::move(x)}}); }

inline PTerm p_add(const PTerm& a, const PTerm& b) {
  if (b->parts.empty()) return a;
  std::size_t keep = 0;
  for (std::size_t i = 0; i < a->parts.size(); ++i)
    if (p_part_cmp(a->parts[i], b->parts[0]) >= 0) keep = i + 1;
  std::vector<PPart> parts(a->parts.begin(), a->parts.begin() + static_cast<std::ptrdiff_t>(keep));
  parts.insert(parts.end(), b->parts.begin(), b->parts.end());
  return std::make_shared<PNode>(PNode{std::move(parts)});
}

// 0 counts 1; each summand Omega^m * psi(x) counts 1 + m + |x|.
inline std::size_t p_size(const PTerm& t) {
  if (t->parts.empty()) return 1;
  std::size_t n = 0;
  for (const auto& p : t->parts) n += 1 + static_cast<std::size_t>(p.m) + p_size(p.x);
  return n;
}

inline Sexpr p_print(const PTerm& t) {
  if (t->parts.empty()) return Sexpr::make_atom("0");
  std::vector<Sexpr> items{Sexpr::make_atom("+")};
  for (const auto& p : t->parts)
    items.push_back(Sexpr::make_list({Sexpr::make_atom("P"), Sexpr::number(p.m),
                                      Sexpr::make_list({Sexpr::make_atom("c"), p_print(p.x)})}));
  return Sexpr::make_list(std::move(items));
}
inline std::string p_show(const PTerm& t) { return to_string(p_print(t)); }

inline PTerm p_parse(const Sexpr& e) {
  if (e.is_atom("0")) return p_zero();
  if (!e.headed("+")) throw ParseError("P: expected 0 or (+ (P m (c T)) ...), got " + to_string(e));
  std::vector<PPart> parts;
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    const auto& s = e.items[i];
    if (!s.headed("P") || s.arity() != 3 || !s.items[2].headed("c") || s.items[2].arity() != 2)
      throw ParseError("P: summand must be (P m (c T))");
    parts.push_back(PPart{s.items[1].as_int(), p_parse(s.items[2].items[1])});
  }
  try {
    return p_make(std::move(parts));
  } catch (const NotationError& err) {
    throw ParseError(err.what());
  }
}
inline PTerm p_parse(std::string_view text) { return p_parse(parse_sexpr(text)); }

inline std::vector<PTerm> p_enumerate(std::size_t bound, bool members_only = false) {
  std::vector<PTerm> out;
  if (bound == 0) return out;
  std::vector<PPart> pool;
  if (bound >= 2)
    for (const auto& x : p_enumerate(bound - 2, true))
      for (std::int64_t m = 0; 1 + static_cast<std::size_t>(m) + p_size(x) <= bound; ++m) pool.push_back({m, x});
  merge_sort(pool, [](const PPart& a, const PPart& b) { return p_part_cmp(b, a); });
  auto cost = [](const PPart& p) { return 1 + static_cast<std::size_t>(p.m) + p_size(p.x); };
  for (auto& seq : weakly_decreasing_sequences(pool, bound, cost)) {
    auto t = seq.empty() ? p_zero() : std::make_shared<PNode>(PNode{std::move(seq)});
    if (!members_only || p_member_psi(t)) out.push_back(std::move(t));
  }
  merge_sort(out, [](const PTerm& a, const PTerm& b) {
    auto sa = p_size(a), sb = p_size(b);
    if (sa != sb) return sa <=> sb;
    return p_cmp(a, b);
  });
  return out;
}

struct PSystem {
  using term_type = PTerm;
  // Restrict to psi(Omega^omega).
  bool members_only = false;

  Ordering compare(const PTerm& a, const PTerm& b) const { return p_cmp(a, b); }
  std::size_t size(const PTerm& t) const { return p_size(t); }
  std::vector<PTerm> enumerate(std::size_t bound) const { return p_enumerate(bound, members_only); }
  Sexpr print(const PTerm& t) const { return p_print(t); }
  PTerm parse(const Sexpr& e) const {
    auto t = p_parse(e);
    if (members_only && !p_member_psi(t)) throw ParseError("term not in psi(Omega^omega)");
    return t;
  }
};

}  // namespace dseq
