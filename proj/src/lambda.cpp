#include "pcl/lambda.hpp"

#include "pcl/errors.hpp"

#include <cctype>
#include <unordered_map>

namespace pcl {

namespace {

std::vector<std::vector<RatFunc>> as_matrix(const std::vector<std::vector<RatFunc>> &columns, std::size_t rows,
                                            const AmbientPtr &amb) {
  std::vector<std::vector<RatFunc>> M(rows, std::vector<RatFunc>(columns.size(), RatFunc(amb)));
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i)
      M[i][j] = columns[j][i];
  return M;
}

} // namespace

PSpan::PSpan(AmbientPtr ambient) : ambient_(std::move(ambient)), p_(ambient_->characteristic()) {
  monomials_.push_back(RatFunc(ambient_, 1));
  columns_.push_back(p_coordinates(monomials_.back()).coords);
}

std::optional<std::vector<RatFunc>> PSpan::solve(const RatFunc &x) const {
  const auto target = p_coordinates(x).coords;
  if (x.is_zero())
    return std::vector<RatFunc>(columns_.size(), RatFunc(ambient_));
  auto r = linear_solve(as_matrix(columns_, target.size(), ambient_), target);
  if (auto *v = std::get_if<std::vector<RatFunc>>(&r))
    return std::move(*v);
  if (std::holds_alternative<Underdetermined>(r))
    throw DomainError("InternalError", "p-monomials of an independent tuple became dependent");
  return std::nullopt;
}

bool PSpan::try_extend(const RatFunc &e) {
  if (!(*e.ambient()->ring() == *ambient_->ring()))
    throw SpecMismatch("element from another ambient field");
  if (contains(e))
    return false;
  // New monomials s^I * e^j, keeping the last position least significant.
  std::vector<RatFunc> mons;
  std::vector<std::vector<RatFunc>> cols;
  std::vector<RatFunc> powers{RatFunc(ambient_, 1)};
  for (std::uint32_t j = 1; j < p_; ++j)
    powers.push_back(powers.back() * e);
  for (const auto &m : monomials_)
    for (const auto &pw : powers) {
      mons.push_back(m * pw);
      cols.push_back(p_coordinates(mons.back()).coords);
    }
  kept_.push_back(e);
  monomials_ = std::move(mons);
  columns_ = std::move(cols);
  return true;
}

namespace {

PSpan span_of_base(const Subfield &C) {
  PSpan span(C.ambient());
  for (const auto &g : C.gens())
    span.try_extend(g);
  return span;
}

} // namespace

std::optional<SpanWitness> in_p_span(const RatFunc &x, const KTuple &b, const Subfield &C) {
  PSpan span = span_of_base(C);
  for (const auto &e : b)
    span.try_extend(e);
  auto mu = span.solve(x);
  if (!mu)
    return std::nullopt;
  return SpanWitness{span.tuple(), std::move(*mu)};
}

bool p_independent(const KTuple &b, const Subfield &C) {
  PSpan span = span_of_base(C);
  for (const auto &e : b)
    if (!span.try_extend(e))
      return false;
  return true;
}

bool p_independent(const KTuple &b) {
  if (b.empty())
    return true;
  return p_independent(b, Subfield(b.front().ambient(), {}));
}

KTuple p_ind_prefix(const KTuple &b, const Subfield &C) {
  PSpan span = span_of_base(C);
  KTuple out;
  for (const auto &e : b)
    if (span.try_extend(e))
      out.push_back(e);
  return out;
}

std::map<MultiIndex, RatFunc> lambda_eval(const RatFunc &a, const KTuple &b) {
  PSpan span(a.ambient());
  for (const auto &e : b)
    if (!span.try_extend(e))
      throw NotPIndependent("tuple is not p-independent");
  auto mu = span.solve(a);
  if (!mu)
    throw NotInSpan(a.to_string() + " is not in K^(p)(b)");
  std::map<MultiIndex, RatFunc> out;
  const std::uint32_t p = a.ambient()->characteristic();
  for (std::size_t i = 0; i < mu->size(); ++i)
    out.emplace(MultiIndex::from_linear(i, p, b.size()), (*mu)[i]);
  return out;
}

namespace {

KTuple greedy_basis(const KTuple &candidates, std::vector<RatFunc> fixed, const AmbientPtr &amb) {
  KTuple kept;
  for (const auto &g : candidates) {
    auto gens = fixed;
    gens.insert(gens.end(), kept.begin(), kept.end());
    if (!member(g, Subfield(amb, std::move(gens))))
      kept.push_back(g);
  }
  return kept;
}

} // namespace

KTuple p_basis(const Subfield &D) {
  std::vector<RatFunc> powers;
  for (const auto &g : D.gens())
    powers.push_back(g.frobenius());
  return greedy_basis(D.gens(), std::move(powers), D.ambient());
}

std::size_t impdeg(const Subfield &D) { return p_basis(D).size(); }

KTuple p_basis_rel(const Subfield &E, const Subfield &D) {
  std::vector<RatFunc> fixed;
  for (const auto &g : E.gens())
    fixed.push_back(g.frobenius());
  fixed.insert(fixed.end(), D.gens().begin(), D.gens().end());
  return greedy_basis(E.gens(), std::move(fixed), E.ambient());
}

std::size_t impdeg_rel(const Subfield &E, const Subfield &D) { return p_basis_rel(E, D).size(); }

// ---- terms

namespace {
LambdaTerm make(LambdaNode n) { return std::make_shared<const LambdaNode>(std::move(n)); }
LambdaNode node(LambdaNode::Kind k) {
  LambdaNode n{};
  n.kind = k;
  return n;
}
} // namespace

LambdaTerm LambdaNode::var(std::string name) {
  auto n = node(Kind::Var);
  n.name = std::move(name);
  return make(std::move(n));
}

LambdaTerm LambdaNode::constant(FieldPtr field, FiniteField::Elem value) {
  auto n = node(Kind::Const);
  n.field = std::move(field);
  n.value = value;
  return make(std::move(n));
}

LambdaTerm LambdaNode::add(LambdaTerm a, LambdaTerm b) {
  auto n = node(Kind::Add);
  n.args = {std::move(a), std::move(b)};
  return make(std::move(n));
}

LambdaTerm LambdaNode::sub(LambdaTerm a, LambdaTerm b) {
  auto n = node(Kind::Sub);
  n.args = {std::move(a), std::move(b)};
  return make(std::move(n));
}

LambdaTerm LambdaNode::mul(LambdaTerm a, LambdaTerm b) {
  auto n = node(Kind::Mul);
  n.args = {std::move(a), std::move(b)};
  return make(std::move(n));
}

LambdaTerm LambdaNode::inv(LambdaTerm a) {
  auto n = node(Kind::Inv);
  n.args = {std::move(a)};
  return make(std::move(n));
}

LambdaTerm LambdaNode::apply(std::uint32_t p, MultiIndex index, LambdaTerm x, std::vector<LambdaTerm> ys) {
  auto n = node(Kind::Apply);
  n.p = p;
  n.index = std::move(index);
  n.args.push_back(std::move(x));
  for (auto &y : ys)
    n.args.push_back(std::move(y));
  return make(std::move(n));
}

namespace {

struct Evaluator {
  const Environment &env;
  const AmbientPtr &amb;
  std::unordered_map<const LambdaNode *, RatFunc> memo;

  RatFunc operator()(const LambdaTerm &t) {
    if (auto it = memo.find(t.get()); it != memo.end())
      return it->second;
    RatFunc r = compute(*t);
    memo.emplace(t.get(), r);
    return r;
  }

  RatFunc compute(const LambdaNode &n) {
    using K = LambdaNode::Kind;
    switch (n.kind) {
    case K::Var: {
      auto it = env.find(n.name);
      if (it == env.end())
        throw DomainError("UnboundVariable", "no value for '" + n.name + "'");
      return it->second;
    }
    case K::Const:
      return RatFunc(amb, n.value);
    case K::Add:
      return (*this)(n.args[0]) + (*this)(n.args[1]);
    case K::Sub:
      return (*this)(n.args[0]) - (*this)(n.args[1]);
    case K::Mul:
      return (*this)(n.args[0]) * (*this)(n.args[1]);
    case K::Inv: {
      const RatFunc x = (*this)(n.args[0]);
      if (x.is_zero())
        throw DivisionByZero("inv(0) inside a lambda term");
      return x.inverse();
    }
    case K::Apply: {
      const std::size_t k = n.args.size() - 1;
      if (n.p != amb->characteristic() || n.index.size() != k)
        return RatFunc(amb);
      for (auto e : n.index.entries)
        if (e >= n.p)
          return RatFunc(amb);
      const RatFunc x = (*this)(n.args[0]);
      PSpan span(amb);
      for (std::size_t i = 1; i <= k; ++i)
        if (!span.try_extend((*this)(n.args[i])))
          return RatFunc(amb);
      auto mu = span.solve(x);
      if (!mu)
        return RatFunc(amb);
      return (*mu)[n.index.linear(n.p)];
    }
    }
    return RatFunc(amb);
  }
};

} // namespace

RatFunc lambda_term_eval(const LambdaTerm &term, const Environment &env, const AmbientPtr &ambient) {
  Evaluator ev{env, ambient, {}};
  return ev(term);
}

std::string to_sexpr(const LambdaTerm &t) {
  using K = LambdaNode::Kind;
  switch (t->kind) {
  case K::Var:
    return t->name;
  case K::Const: {
    if (t->field->is_prime_field())
      return std::to_string(t->value);
    std::string s = "(fq";
    for (auto d : t->field->digits(t->value))
      s += " " + std::to_string(d);
    return s + ")";
  }
  case K::Add:
    return "(+ " + to_sexpr(t->args[0]) + " " + to_sexpr(t->args[1]) + ")";
  case K::Sub:
    return "(- " + to_sexpr(t->args[0]) + " " + to_sexpr(t->args[1]) + ")";
  case K::Mul:
    return "(* " + to_sexpr(t->args[0]) + " " + to_sexpr(t->args[1]) + ")";
  case K::Inv:
    return "(inv " + to_sexpr(t->args[0]) + ")";
  case K::Apply: {
    std::string s = "(l " + std::to_string(t->p) + " (";
    for (std::size_t i = 0; i < t->index.size(); ++i)
      s += (i ? " " : "") + std::to_string(t->index[i]);
    s += ") " + to_sexpr(t->args[0]) + " (";
    for (std::size_t i = 1; i < t->args.size(); ++i)
      s += (i > 1 ? " " : "") + to_sexpr(t->args[i]);
    return s + "))";
  }
  }
  return {};
}

namespace {

class SexprReader {
public:
  SexprReader(const std::string &s, const FieldPtr &field) : s_(s), field_(field) {}

  LambdaTerm read_all() {
    auto t = term();
    skip();
    if (pos_ != s_.size())
      throw ParseError("trailing input after term", pos_, "end of input");
    return t;
  }

private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c)
      throw ParseError(std::string("expected '") + c + "'", pos_, std::string(1, c));
    ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  std::string token() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' &&
           s_[pos_] != ')')
      ++pos_;
    if (start == pos_)
      throw ParseError("expected a token", pos_, "symbol or number");
    return s_.substr(start, pos_ - start);
  }
  std::uint64_t number() {
    const std::size_t at = pos_;
    const auto tok = token();
    for (char c : tok)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError("expected a number", at, "natural number");
    return std::stoull(tok);
  }

  LambdaTerm term() {
    if (!peek('(')) {
      const std::size_t at = pos_;
      const auto tok = token();
      if (std::isdigit(static_cast<unsigned char>(tok[0]))) {
        for (char c : tok)
          if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("malformed number", at);
        return LambdaNode::constant(field_, field_->from_int(static_cast<std::int64_t>(std::stoull(tok) % field_->characteristic())));
      }
      return LambdaNode::var(tok);
    }
    expect('(');
    const std::size_t at = pos_;
    const auto head = token();
    LambdaTerm out;
    if (head == "+" || head == "-" || head == "*") {
      auto a = term();
      auto b = term();
      out = head == "+" ? LambdaNode::add(a, b) : head == "-" ? LambdaNode::sub(a, b) : LambdaNode::mul(a, b);
    } else if (head == "inv") {
      out = LambdaNode::inv(term());
    } else if (head == "fq") {
      std::vector<std::uint32_t> digits;
      while (!peek(')'))
        digits.push_back(static_cast<std::uint32_t>(number()));
      out = LambdaNode::constant(field_, field_->from_digits(digits));
    } else if (head == "l") {
      const auto p = static_cast<std::uint32_t>(number());
      expect('(');
      MultiIndex idx;
      while (!peek(')'))
        idx.entries.push_back(static_cast<std::uint32_t>(number()));
      expect(')');
      auto x = term();
      expect('(');
      std::vector<LambdaTerm> ys;
      while (!peek(')'))
        ys.push_back(term());
      expect(')');
      out = LambdaNode::apply(p, std::move(idx), std::move(x), std::move(ys));
    } else {
      throw ParseError("unknown head '" + head + "'", at, "+, -, *, inv, l or fq");
    }
    expect(')');
    return out;
  }

  const std::string &s_;
  FieldPtr field_;
  std::size_t pos_ = 0;
};

} // namespace

LambdaTerm parse_sexpr(const std::string &src, const FieldPtr &field) { return SexprReader(src, field).read_all(); }

} // namespace pcl
