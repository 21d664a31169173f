#include "pcl/parser.hpp"

#include "pcl/errors.hpp"

#include <cctype>
#include <functional>

namespace pcl {

namespace {

// Recursive descent over a value type V that supports + - * and a division
// hook. Ops supplies the leaves.
template <class V> struct Ops {
  std::function<V(const std::string &, std::size_t)> variable;
  std::function<V(std::int64_t)> integer;
  std::function<V(const V &, const V &, std::size_t)> divide;
  std::function<V(const V &, std::int64_t, std::size_t)> power;
};

template <class V> class Parser {
public:
  Parser(const std::string &src, Ops<V> ops) : s_(src), ops_(std::move(ops)) {}

  V parse() {
    V v = expr();
    skip();
    if (pos_ != s_.size())
      throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_, "operator or end of input");
    return v;
  }

private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  V expr() {
    skip();
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    V acc = term();
    if (negate)
      acc = ops_.integer(0) - acc;
    for (;;) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  V term() {
    V acc = factor();
    for (;;) {
      skip();
      const std::size_t at = pos_;
      if (accept('*'))
        acc = acc * factor();
      else if (accept('/'))
        acc = ops_.divide(acc, factor(), at);
      else
        return acc;
    }
  }

  V factor() {
    if (accept('-'))
      return ops_.integer(0) - factor();
    V base = atom();
    skip();
    const std::size_t at = pos_;
    if (accept('^'))
      return ops_.power(base, exponent(), at);
    return base;
  }

  std::int64_t exponent() {
    const bool paren = accept('(');
    const bool neg = accept('-');
    skip();
    const std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > (1LL << 31))
        throw ParseError("exponent too large", start);
      ++pos_;
    }
    if (pos_ == start)
      throw ParseError("missing exponent", pos_, "natural number");
    if (paren && !accept(')'))
      throw ParseError("unbalanced parenthesis in exponent", pos_, "')'");
    return neg ? -v : v;
  }

  V atom() {
    skip();
    if (pos_ >= s_.size())
      throw ParseError("unexpected end of input", pos_, "variable, number or '('");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      V v = expr();
      if (!accept(')'))
        throw ParseError("unbalanced parenthesis", pos_, "')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::int64_t v = 0;
      const std::int64_t mod = modulus_hint;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        v = (v * 10 + (s_[pos_] - '0')) % mod;
        ++pos_;
      }
      return ops_.integer(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      return ops_.variable(s_.substr(start, pos_ - start), start);
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_, "variable, number or '('");
  }

public:
  std::int64_t modulus_hint = 1;

private:
  const std::string &s_;
  Ops<V> ops_;
  std::size_t pos_ = 0;
};

} // namespace

RatFunc parse_element(const std::string &src, const AmbientPtr &ambient) {
  const auto &field = ambient->field();
  Ops<RatFunc> ops;
  ops.variable = [&](const std::string &name, std::size_t at) -> RatFunc {
    const int idx = ambient->ring()->index_of(name);
    if (idx >= 0)
      return RatFunc::variable(ambient, static_cast<std::size_t>(idx));
    if (!field->is_prime_field() && name == FiniteField::kGeneratorName)
      return RatFunc(ambient, field->generator());
    throw UnknownVariable(name, at);
  };
  ops.integer = [&](std::int64_t v) { return RatFunc(ambient, field->from_int(v)); };
  ops.divide = [&](const RatFunc &a, const RatFunc &b, std::size_t at) -> RatFunc {
    if (b.is_zero())
      throw ParseError("division by zero", at);
    return a / b;
  };
  ops.power = [&](const RatFunc &a, std::int64_t e, std::size_t at) -> RatFunc {
    if (e < 0 && a.is_zero())
      throw ParseError("negative power of zero", at);
    return a.pow(e);
  };
  Parser<RatFunc> parser(src, ops);
  parser.modulus_hint = field->characteristic();
  return parser.parse();
}

MPoly parse_polynomial(const std::string &src, const RingPtr &ring) {
  const auto &field = ring->field();
  Ops<MPoly> ops;
  ops.variable = [&](const std::string &name, std::size_t at) -> MPoly {
    const int idx = ring->index_of(name);
    if (idx >= 0)
      return MPoly::variable(ring, static_cast<std::size_t>(idx));
    if (!field->is_prime_field() && name == FiniteField::kGeneratorName)
      return MPoly(ring, field->generator());
    throw UnknownVariable(name, at);
  };
  ops.integer = [&](std::int64_t v) { return MPoly(ring, field->from_int(v)); };
  ops.divide = [&](const MPoly &a, const MPoly &b, std::size_t at) -> MPoly {
    if (!b.is_constant() || b.is_zero())
      throw ParseError("polynomial expressions may only divide by nonzero constants", at);
    return a.scale(field->inv(b.lead_coeff()));
  };
  ops.power = [&](const MPoly &a, std::int64_t e, std::size_t at) -> MPoly {
    if (e < 0)
      throw ParseError("negative exponent in a polynomial", at, "natural number");
    return a.pow(static_cast<std::uint64_t>(e));
  };
  Parser<MPoly> parser(src, ops);
  parser.modulus_hint = field->characteristic();
  return parser.parse();
}

std::vector<std::string> split_list(const std::string &src, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  auto flush = [&] {
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? std::string{} : cur.substr(b, e - b + 1));
    cur.clear();
  };
  for (char c : src) {
    if (c == '(')
      ++depth;
    else if (c == ')')
      --depth;
    if (c == sep && depth == 0)
      flush();
    else
      cur += c;
  }
  flush();
  if (out.size() == 1 && out[0].empty())
    out.clear();
  return out;
}

std::vector<RatFunc> parse_tuple(const std::string &src, const AmbientPtr &ambient) {
  std::vector<RatFunc> out;
  for (const auto &part : split_list(src))
    out.push_back(parse_element(part, ambient));
  return out;
}

} // namespace pcl
