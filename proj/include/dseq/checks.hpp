#pragma once

#include <string>
#include <vector>

#include "dseq/predilator.hpp"

namespace dseq {

struct SupportResult {
  enum class Status { witness, violation, bound_exhausted };
  Status status = Status::violation;
  Value witness;  // over supp(sigma), when found
  bool ok() const { return status == Status::witness; }
};

// Searches D(|supp sigma|) up to search_bound for tau with D(iota)(tau) = sigma.
inline SupportResult check_support_condition(const Predilator& d, std::size_t base, const Value& sigma,
                                             std::size_t search_bound) {
  SupportResult r;
  auto s = d.supp(sigma);
  for (auto x : s)
    if (x >= base) return r;
  auto iota = OrderMap::of_subset(s, base);
  for (const auto& tau : d.enumerate(s.size(), search_bound))
    if (d.act(iota, tau) == sigma) {
      r.status = SupportResult::Status::witness;
      r.witness = tau;
      return r;
    }
  r.status = search_bound < d.size(sigma) ? SupportResult::Status::bound_exhausted : SupportResult::Status::violation;
  return r;
}

struct NaturalityReport {
  std::size_t values = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// supp(D(f)(sigma)) = f[supp(sigma)] and D(f) strictly monotone, for all sigma up to the bound.
inline NaturalityReport check_naturality(const Predilator& d, const OrderMap& f, std::size_t bound) {
  NaturalityReport r;
  auto vals = d.enumerate(f.domain(), bound);
  r.values = vals.size();
  std::vector<Value> img;
  for (const auto& v : vals) {
    auto w = d.act(f, v);
    if (!d.valid(w, f.codomain())) r.violations.push_back("image not valid: " + d.show(v));
    if (d.supp(w) != f.image(d.supp(v))) r.violations.push_back("support not natural at " + d.show(v));
    img.push_back(std::move(w));
  }
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = 0; j < vals.size(); ++j)
      if (d.compare(vals[i], vals[j]) != d.compare(img[i], img[j]))
        r.violations.push_back("not monotone at " + d.show(vals[i]) + " / " + d.show(vals[j]));
  return r;
}

// act(id) = id and act(g o f) = act(g) o act(f) on all values up to the bound.
inline NaturalityReport check_functor_laws(const Predilator& d, const OrderMap& f, const OrderMap& g,
                                           std::size_t bound) {
  NaturalityReport r;
  auto vals = d.enumerate(f.domain(), bound);
  r.values = vals.size();
  auto id = OrderMap::identity(f.domain());
  auto gf = g * f;
  for (const auto& v : vals) {
    if (d.act(id, v) != v) r.violations.push_back("identity law fails at " + d.show(v));
    if (d.act(gf, v) != d.act(g, d.act(f, v))) r.violations.push_back("composition law fails at " + d.show(v));
  }
  return r;
}

}  // namespace dseq
