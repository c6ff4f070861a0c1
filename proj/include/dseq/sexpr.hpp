#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dseq {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Minimal S-expression: an atom or a parenthesized list.
struct Sexpr {
  bool list = false;
  std::string atom;
  std::vector<Sexpr> items;

  static Sexpr make_atom(std::string a) {
    Sexpr s;
    s.atom = std::move(a);
    return s;
  }
  static Sexpr make_list(std::vector<Sexpr> xs) {
    Sexpr s;
    s.list = true;
    s.items = std::move(xs);
    return s;
  }
  static Sexpr number(std::int64_t v) { return make_atom(std::to_string(v)); }

  bool is_atom(std::string_view a) const { return !list && atom == a; }
  bool headed(std::string_view h) const {
    return list && !items.empty() && items.front().is_atom(h);
  }
  std::size_t arity() const { return list ? items.size() : 0; }

  std::int64_t as_int() const {
    if (list) throw ParseError("expected integer, got list");
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(atom.data(), atom.data() + atom.size(), v);
    if (ec != std::errc{} || p != atom.data() + atom.size())
      throw ParseError("expected integer, got '" + atom + "'");
    return v;
  }

  bool operator==(const Sexpr&) const = default;
};

namespace detail {

class SexprReader {
 public:
  explicit SexprReader(std::string_view s) : s_(s) {}

  Sexpr read_all() {
    Sexpr e = read();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(why + " at offset " + std::to_string(pos_));
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  Sexpr read() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (s_[pos_] == ')') fail("unexpected ')'");
    if (s_[pos_] == '(') {
      ++pos_;
      std::vector<Sexpr> xs;
      for (;;) {
        skip_ws();
        if (pos_ >= s_.size()) fail("unterminated list");
        if (s_[pos_] == ')') {
          ++pos_;
          return Sexpr::make_list(std::move(xs));
        }
        xs.push_back(read());
      }
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != '(' && s_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    return Sexpr::make_atom(std::string(s_.substr(start, pos_ - start)));
  }
};

}  // namespace detail

inline Sexpr parse_sexpr(std::string_view text) { return detail::SexprReader(text).read_all(); }

inline void print_sexpr(const Sexpr& e, std::string& out) {
  if (!e.list) {
    out += e.atom;
    return;
  }
  out += '(';
  for (std::size_t i = 0; i < e.items.size(); ++i) {
    if (i) out += ' ';
    print_sexpr(e.items[i], out);
  }
  out += ')';
}

inline std::string to_string(const Sexpr& e) {
  std::string out;
  print_sexpr(e, out);
  return out;
}

}  // namespace dseq
