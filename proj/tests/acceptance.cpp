// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance [--known-failures 2,5] [--verbose]
//
// Exit status is 0 when the set of failing criteria equals the --known-failures list (empty by
// default), so the known failures still print FAIL but do not mask a new one.

#include <chrono>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dseq/verify.hpp"
#include "oracles.hpp"

using namespace dseq;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      if (notes.size() < 8) notes.push_back(what);
    }
  }
  void absorb(const CheckList& cs);
};

bool verbose = false;

void Outcome::absorb(const CheckList& cs) {
  for (const auto& c : cs) {
    if (verbose) std::cout << "  " << c.name << " @" << c.bound << ": " << c.items << "\n";
    for (const auto& v : c.violations) require(false, c.name + ": " + v);
  }
}

// ---------------------------------------------------------------------------------------------

Outcome worked_examples() {
  Outcome o;
  auto g = classic_run(5, 1);
  o.require(g.size() == 2 && g[0].bumped && *g[0].bumped == 28, "classic seed 5: base change does not give 28");
  o.require(g.size() == 2 && g[1].value && *g[1].value == 27, "classic seed 5: first step does not give 27");
  auto w = weak_run(5, 1);
  o.require(w.size() == 2 && w[0].bumped && *w[0].bumped == 10, "weak seed 5: base change does not give 10");
  o.require(w.size() == 2 && w[1].value && *w[1].value == 9, "weak seed 5: first step does not give 9");
  return o;
}

Outcome sequence_oracles() {
  Outcome o;
  for (unsigned seed = 1; seed <= 6; ++seed) {
    auto run = classic_run(seed, 50);
    auto ref = oracle::classic_sequence(seed, 50);
    o.require(run.size() == ref.size(), "classic seed " + std::to_string(seed) + ": length differs");
    for (std::size_t i = 0; i < std::min(run.size(), ref.size()); ++i)
      if (run[i].notation != ref[i]) {
        o.require(false, "classic seed " + std::to_string(seed) + " differs at stage " + std::to_string(i));
        break;
      }
  }
  // Seeds 1-7 terminate within a few thousand steps; seed 8 does not within any feasible budget.
  const std::size_t budget = 200000;
  for (unsigned seed = 1; seed <= 8; ++seed) {
    bool done = false;
    auto ref = oracle::weak_sequence(seed, budget, done);
    auto run = weak_run(seed, budget);
    bool same = run.size() == ref.size();
    for (std::size_t i = 0; same && i < ref.size(); ++i) same = run[i].value && *run[i].value == ref[i];
    o.require(same, "weak seed " + std::to_string(seed) + " differs from the oracle");
    o.require(done && run.back().term.kids.empty(),
              "weak seed " + std::to_string(seed) + " not terminated after " + std::to_string(budget) + " steps");
  }
  return o;
}

Outcome inverse_prefixes() {
  Outcome o;
  auto p = inverse_prefix(goodstein(), 20);
  auto ref = oracle::inverse_goodstein_values(20);
  o.require(p.size() == 20 && ref.size() == 20, "G prefix is not 20 stages long");
  for (std::size_t k = 0; k < std::min(p.size(), ref.size()); ++k) {
    auto v = eval_g(p.a[k], static_cast<unsigned>(k + 1));
    o.require(v && *v == ref[k] && ref[k] == k, "A_" + std::to_string(k) + " differs from the recursion");
  }
  o.require(!p.a.empty() && p.a[0] == gterm::zero(), "A_0 is not 0");
  for (std::int64_t beta = 0; beta <= 20; ++beta) {
    auto c = inverse_prefix(const_predilator(beta), static_cast<std::size_t>(beta) + 3);
    bool ok = c.size() == static_cast<std::size_t>(beta) && c.terminated_at &&
              *c.terminated_at == static_cast<std::size_t>(beta);
    for (std::size_t k = 0; ok && k < c.size(); ++k) ok = c.a[k] == Value::num(static_cast<std::int64_t>(k));
    o.require(ok, "const " + std::to_string(beta) + ": prefix or termination point wrong");
  }
  for (auto d2 : {goodstein(), weak_goodstein(), const_predilator(5)}) {
    auto s = inverse_prefix(sum_predilator(identity_predilator(), d2), 12);
    auto q = inverse_prefix(d2, 12);
    bool ok = s.size() == q.size() && s.terminated_at == q.terminated_at;
    for (std::size_t k = 0; ok && k < s.size(); ++k) ok = s.a[k] == SumPredilator::inr(q.a[k]);
    o.require(ok, "sum identity fails for Id + " + d2->name());
  }
  return o;
}

Outcome round_trips() {
  Outcome o;
  o.absorb(round_trip_checks(12));
  return o;
}

Outcome linearity() {
  Outcome o;
  for (std::size_t b = 4; b <= 6; ++b) o.absorb(linearity_checks(b));
  return o;
}

Outcome monotonicity() {
  Outcome o;
  std::vector<std::string> names{"omega_normalize", "collapse_f",     "collapse_g",    "kappa_C",
                                 "phi_to_bh",       "f_seq",          "pi_S",          "pOmega_to_psi1W",
                                 "psi1W_to_phi",    "psi1G_to_bhord", "bhord_to_psi1G", "phi_to_pOmega",
                                 "aca_forward_g",   "aca_backward_f"};
  for (const auto& n : names) {
    auto c = monotonicity_check(n, 5);
    o.require(c.items > 0, n + ": no pairs checked");
    o.absorb({c});
  }
  return o;
}

Outcome identities() {
  Outcome o;
  o.absorb(identity_checks(5));
  return o;
}

Outcome heights() {
  Outcome o;
  o.absorb(height_checks(6));
  return o;
}

Outcome pathologies() {
  Outcome o;
  o.absorb(pathology_checks(4));
  return o;
}

Outcome uniqueness() {
  Outcome o;
  o.absorb(hom_checks(6));
  return o;
}

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  Outcome (*run)();
};

std::set<int> parse_ids(const std::string& s) {
  std::set<int> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ','))
    if (!tok.empty()) out.insert(std::stoi(tok));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--known-failures" && i + 1 < argc) {
      known = parse_ids(argv[++i]);
    } else if (a == "--verbose") {
      verbose = true;
    } else {
      std::cerr << "usage: acceptance [--known-failures ids] [--verbose]\n";
      return 2;
    }
  }

  const std::vector<Criterion> criteria{
      {1, "worked examples", 1, worked_examples},
      {2, "sequence oracles", 10, sequence_oracles},
      {3, "inverse-sequence prefixes", 10, inverse_prefixes},
      {4, "termination/fixed-point round trip", 60, round_trips},
      {5, "linearity", 300, linearity},
      {6, "embedding monotonicity", 600, monotonicity},
      {7, "pinned identities", 60, identities},
      {8, "height synthesis", 60, heights},
      {9, "pathologies", 60, pathologies},
      {10, "uniqueness of homomorphisms", 60, uniqueness},
  };

  std::set<int> failed;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", secs);
    o.require(secs < c.limit_seconds, std::string("took ") + buf);
    if (!o.pass) failed.insert(c.id);
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.title << " (" << buf << ")";
    if (!o.pass) std::cout << ": " << o.notes.front();
    std::cout << "\n";
    for (std::size_t i = 1; !o.pass && i < o.notes.size(); ++i) std::cout << "     " << o.notes[i] << "\n";
    std::cout.flush();
  }
  return failed == known ? 0 : 1;
}
