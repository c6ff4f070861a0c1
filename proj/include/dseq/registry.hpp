#pragma once

#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>

#include "dseq/goodstein.hpp"
#include "dseq/predilator.hpp"

namespace dseq {

struct SpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline PredPtr goodstein() {
  static const PredPtr p = std::make_shared<GoodsteinPredilator>();
  return p;
}
inline PredPtr weak_goodstein() {
  static const PredPtr p = std::make_shared<WeakGoodsteinPredilator>();
  return p;
}
inline PredPtr identity_predilator() {
  static const PredPtr p = std::make_shared<IdPredilator>();
  return p;
}
inline PredPtr const_predilator(ConstOrder beta) { return std::make_shared<ConstPredilator>(beta); }
inline PredPtr const_predilator(std::int64_t k) { return const_predilator(ConstOrder::finite(k)); }
inline PredPtr sum_predilator(PredPtr a, PredPtr b) { return std::make_shared<SumPredilator>(std::move(a), std::move(b)); }
inline PredPtr compose_omega(PredPtr d) { return std::make_shared<OmegaPredilator>(std::move(d)); }
inline PredPtr bump_combinator(PredPtr d) { return std::make_shared<BumpPredilator>(std::move(d)); }
inline PredPtr shift_compose(PredPtr d, std::size_t alpha) { return std::make_shared<ShiftPredilator>(std::move(d), alpha); }
inline PredPtr tree_predilator(BinaryTree t) { return std::make_shared<TreePredilator>(std::move(t)); }
inline PredPtr veblen_base() {
  static const PredPtr p = std::make_shared<VeblenBasePredilator>();
  return p;
}
inline PredPtr epsilon_predilator() {
  static const PredPtr p = std::make_shared<EpsilonPredilator>();
  return p;
}

namespace detail {

class SpecReader {
 public:
  explicit SpecReader(std::string_view s) : s_(s) {}

  PredPtr read_all() {
    auto p = read();
    if (pos_ != s_.size()) fail("trailing characters");
    return p;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw SpecError("predilator spec '" + std::string(s_) + "': " + why + " at offset " + std::to_string(pos_));
  }
  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  std::string word() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ':' && s_[pos_] != '(' && s_[pos_] != ')') ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  std::int64_t number() {
    auto w = word();
    try {
      std::size_t used = 0;
      auto v = std::stoll(w, &used);
      if (used != w.size()) fail("expected a number");
      return v;
    } catch (const std::logic_error&) {
      fail("expected a number");
    }
  }

  PredPtr read() {
    if (eat('(')) {
      auto p = read();
      expect(')');
      return p;
    }
    auto name = word();
    if (name == "goodstein" || name == "G") return goodstein();
    if (name == "weak" || name == "W") return weak_goodstein();
    if (name == "id") return identity_predilator();
    if (name == "veblen") return veblen_base();
    if (name == "epsilon") return epsilon_predilator();
    if (name == "const") {
      expect(':');
      auto arg = word();
      if (arg == "Z") return const_predilator(ConstOrder::integers());
      if (arg == "Q") return const_predilator(ConstOrder::rationals());
      try {
        std::size_t used = 0;
        auto k = std::stoll(arg, &used);
        if (used != arg.size() || k < 0) fail("bad constant order");
        return const_predilator(k);
      } catch (const std::logic_error&) {
        fail("bad constant order");
      }
    }
    if (name == "sum") {
      expect(':');
      auto a = read();
      expect(',');
      auto b = read();
      return sum_predilator(a, b);
    }
    if (name == "omega") {
      expect(':');
      return compose_omega(read());
    }
    if (name == "bump") {
      expect(':');
      return bump_combinator(read());
    }
    if (name == "shift") {
      expect(':');
      auto d = read();
      expect(':');
      auto n = number();
      if (n < 0) fail("negative shift");
      return shift_compose(d, static_cast<std::size_t>(n));
    }
    if (name == "tree") {
      expect(':');
      auto path = word();
      std::ifstream in(path);
      if (!in) fail("cannot open tree file " + path);
      std::stringstream buf;
      buf << in.rdbuf();
      return std::make_shared<TreePredilator>(BinaryTree::parse(buf.str()), "tree:" + path);
    }
    fail("unknown predilator '" + name + "'");
  }
};

}  // namespace detail

// Predilators by name: goodstein, weak, id, veblen, epsilon, const:<k|Z|Q>, sum:<a>,<b>, omega:<a>,
// bump:<a>, shift:<a>:<n>, tree:<file>; parentheses group nested specs.
inline PredPtr make_predilator(std::string_view spec) { return detail::SpecReader(spec).read_all(); }

}  // namespace dseq
