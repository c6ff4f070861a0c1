#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dseq/predilator.hpp"

namespace dseq {

// A finite initial segment {0 < ... < n-1} of a termination point: A[x] is a D-value over x,
// i.e. over the strict predecessors of x. Lifts along inclusions are the identity on payloads.
struct TerminationPrefix {
  PredPtr d;
  std::vector<Value> a;
  // Symbol weight of each point, used to bound enumerations over the prefix (1 by default).
  std::vector<std::size_t> weight;
  // True when the prefix is known to be the whole termination point.
  bool complete = false;
  // Stage at which least_above found nothing, if it did.
  std::optional<std::size_t> terminated_at;
  // Points below this index stand in for an unrepresented part of the order: their values may
  // refer outside the prefix and they are not checked themselves.
  std::size_t boundary = 0;

  std::size_t size() const { return a.size(); }
  std::size_t weight_of(std::size_t x) const { return x < weight.size() ? weight[x] : 1; }
};

struct PrefixError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The increasing D-sequence at finite stages: A_k is the least value of D(k) above A_0..A_{k-1}.
inline TerminationPrefix inverse_prefix(PredPtr d, std::size_t n) {
  if (!d->has_least_above()) throw Unsupported(d->name() + ": least_above not available");
  TerminationPrefix p;
  p.d = d;
  for (std::size_t k = 0; k < n; ++k) {
    auto next = d->least_above(k, p.a);
    if (!next) {
      p.terminated_at = k;
      p.complete = true;
      break;
    }
    p.a.push_back(std::move(*next));
    p.weight.push_back(1);
  }
  return p;
}

inline std::string show_prefix(const TerminationPrefix& p) {
  std::string out;
  for (std::size_t x = 0; x < p.size(); ++x) out += std::to_string(x) + " " + p.d->show(p.a[x]) + "\n";
  return out;
}

}  // namespace dseq
