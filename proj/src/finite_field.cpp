#include "pcl/finite_field.hpp"

#include "pcl/errors.hpp"

#include <map>
#include <mutex>
#include <regex>

namespace pcl {

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

// Conway polynomials, coefficients x^0..x^m.
const std::map<std::pair<unsigned, unsigned>, std::vector<std::uint32_t>> &modulus_table() {
  static const std::map<std::pair<unsigned, unsigned>, std::vector<std::uint32_t>> table = {
      {{2, 2}, {1, 1, 1}},       {{2, 3}, {1, 1, 0, 1}},    {{2, 4}, {1, 1, 0, 0, 1}},
      {{3, 2}, {2, 2, 1}},       {{3, 3}, {1, 2, 0, 1}},    {{3, 4}, {2, 0, 0, 2, 1}},
      {{5, 2}, {2, 4, 1}},       {{5, 3}, {3, 3, 0, 1}},    {{5, 4}, {2, 4, 4, 0, 1}},
      {{7, 2}, {3, 6, 1}},       {{7, 3}, {4, 0, 6, 1}},    {{7, 4}, {3, 4, 5, 0, 1}},
  };
  return table;
}

// Polynomials over F_p as coefficient vectors, low degree first.
using Upoly = std::vector<std::uint32_t>;

void trim(Upoly &a) {
  while (!a.empty() && a.back() == 0)
    a.pop_back();
}

Upoly upoly_mod(Upoly a, const Upoly &b, std::uint32_t p) {
  trim(a);
  const std::uint64_t lead_inv = [&] {
    std::uint64_t r = 1, base = b.back(), e = p - 2;
    while (e) {
      if (e & 1)
        r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return r;
  }();
  while (a.size() >= b.size()) {
    const std::uint64_t f = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - f) * b[i]) % p);
    trim(a);
  }
  return a;
}

bool irreducible(const Upoly &f, std::uint32_t p) {
  const unsigned m = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= m / 2; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i)
      count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Upoly g(d + 1);
      std::uint64_t c = code;
      for (unsigned i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (upoly_mod(f, g, p).empty())
        return false;
    }
  }
  return true;
}

} // namespace

FieldPtr FiniteField::get(std::uint64_t p, unsigned m) {
  if (!is_prime(p) || p > kMaxPrime)
    throw DomainError("InvalidField", "characteristic " + std::to_string(p) + " is not a supported prime");
  if (m == 0)
    throw DomainError("InvalidField", "extension degree must be at least 1");
  if (m > 1 && (m > kMaxDegree || !modulus_table().count({static_cast<unsigned>(p), m})))
    throw DomainError("InvalidField", "GF(" + std::to_string(p) + "^" + std::to_string(m) +
                                          ") is outside the modulus table (p in {2,3,5,7}, m <= 4)");
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, unsigned>, FieldPtr> interned;
  std::lock_guard lock(mu);
  auto &slot = interned[{p, m}];
  if (!slot)
    slot = FieldPtr(new FiniteField(static_cast<std::uint32_t>(p), m));
  return slot;
}

FiniteField::FiniteField(std::uint32_t p, unsigned m) : p_(p), m_(m) {
  q_ = 1;
  for (unsigned i = 0; i <= m; ++i) {
    pow_p_.push_back(static_cast<std::uint32_t>(q_));
    if (i < m)
      q_ *= p;
  }
  if (m == 1) {
    modulus_ = {0, 1};
    if (p <= (1u << 16)) {
      inv_.assign(p, 0);
      for (std::uint32_t a = 1; a < p; ++a) {
        if (inv_[a])
          continue;
        std::uint64_t r = 1, base = a, e = p - 2;
        while (e) {
          if (e & 1)
            r = r * base % p;
          base = base * base % p;
          e >>= 1;
        }
        inv_[a] = static_cast<Elem>(r);
        inv_[r] = a;
      }
    }
    return;
  }
  modulus_ = modulus_table().at({p, m});
  if (!irreducible(modulus_, p))
    throw DomainError("InvalidField", "defining polynomial is reducible");

  // Discrete log tables: find a generator of the multiplicative group.
  const std::uint32_t order = static_cast<std::uint32_t>(q_ - 1);
  exp_.assign(order, 0);
  log_.assign(q_, 0);
  for (Elem g = 2; g < q_; ++g) {
    Elem x = 1;
    std::uint32_t k = 0;
    bool ok = true;
    for (; k < order; ++k) {
      if (k > 0 && x == 1) {
        ok = false;
        break;
      }
      exp_[k] = x;
      x = mul_poly(x, g);
    }
    if (ok && x == 1)
      break;
  }
  for (std::uint32_t k = 0; k < order; ++k)
    log_[exp_[k]] = k;

  if (q_ <= 256) {
    add_.assign(q_ * q_, 0);
    for (Elem a = 0; a < q_; ++a)
      for (Elem b = 0; b < q_; ++b) {
        Elem r = 0;
        for (unsigned i = 0; i < m_; ++i) {
          const std::uint32_t da = a / pow_p_[i] % p_, db = b / pow_p_[i] % p_;
          r += (da + db) % p_ * pow_p_[i];
        }
        add_[a * q_ + b] = r;
      }
  }
}

FiniteField::Elem FiniteField::mul_poly(Elem a, Elem b) const {
  const auto da = digits(a), db = digits(b);
  Upoly prod(2 * m_, 0);
  for (unsigned i = 0; i < m_; ++i)
    for (unsigned j = 0; j < m_; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p_);
  auto r = upoly_mod(prod, modulus_, p_);
  r.resize(m_, 0);
  return from_digits(r);
}

FiniteField::Elem FiniteField::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0)
    r += p_;
  return static_cast<Elem>(r);
}

FiniteField::Elem FiniteField::from_digits(std::span<const std::uint32_t> d) const {
  Elem r = 0;
  for (std::size_t i = 0; i < d.size() && i < m_; ++i)
    r += d[i] % p_ * pow_p_[i];
  return r;
}

std::vector<std::uint32_t> FiniteField::digits(Elem x) const {
  std::vector<std::uint32_t> d(m_);
  for (unsigned i = 0; i < m_; ++i) {
    d[i] = x % p_;
    x /= p_;
  }
  return d;
}

FiniteField::Elem FiniteField::add(Elem a, Elem b) const {
  if (m_ == 1) {
    const std::uint64_t s = static_cast<std::uint64_t>(a) + b;
    return static_cast<Elem>(s >= p_ ? s - p_ : s);
  }
  if (!add_.empty())
    return add_[a * q_ + b];
  Elem r = 0;
  for (unsigned i = 0; i < m_; ++i) {
    const std::uint32_t da = a % p_, db = b % p_;
    r += (da + db) % p_ * pow_p_[i];
    a /= p_;
    b /= p_;
  }
  return r;
}

FiniteField::Elem FiniteField::neg(Elem a) const {
  if (m_ == 1)
    return a == 0 ? 0 : p_ - a;
  Elem r = 0;
  for (unsigned i = 0; i < m_; ++i) {
    const std::uint32_t d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * pow_p_[i];
    a /= p_;
  }
  return r;
}

FiniteField::Elem FiniteField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

FiniteField::Elem FiniteField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0)
    return 0;
  if (m_ == 1)
    return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
  const std::uint32_t order = static_cast<std::uint32_t>(q_ - 1);
  std::uint32_t k = log_[a] + log_[b];
  if (k >= order)
    k -= order;
  return exp_[k];
}

FiniteField::Elem FiniteField::inv(Elem a) const {
  if (a == 0)
    throw DivisionByZero("inverse of zero in " + name());
  if (m_ == 1) {
    if (!inv_.empty())
      return inv_[a];
    // Extended Euclid for large p.
    std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
      const std::int64_t quo = r / new_r;
      std::tie(t, new_t) = std::make_pair(new_t, t - quo * new_t);
      std::tie(r, new_r) = std::make_pair(new_r, r - quo * new_r);
    }
    return from_int(t);
  }
  const std::uint32_t order = static_cast<std::uint32_t>(q_ - 1);
  return exp_[(order - log_[a]) % order];
}

FiniteField::Elem FiniteField::pow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  while (e) {
    if (e & 1)
      r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

FiniteField::Elem FiniteField::frobenius_inv(Elem a) const {
  if (m_ == 1)
    return a;
  return pow(a, pow_p_[m_ - 1]);
}

std::string FiniteField::name() const {
  if (m_ == 1)
    return "GF(" + std::to_string(p_) + ")";
  return "GF(" + std::to_string(p_) + "^" + std::to_string(m_) + ")";
}

std::string FiniteField::render(Elem a) const {
  if (m_ == 1)
    return std::to_string(a);
  if (a == 0)
    return "0";
  const auto d = digits(a);
  std::string out;
  for (int i = static_cast<int>(m_) - 1; i >= 0; --i) {
    if (d[i] == 0)
      continue;
    if (!out.empty())
      out += " + ";
    if (i == 0) {
      out += std::to_string(d[i]);
      continue;
    }
    if (d[i] != 1)
      out += std::to_string(d[i]) + "*";
    out += kGeneratorName;
    if (i > 1)
      out += "^" + std::to_string(i);
  }
  return out;
}

bool FiniteField::render_is_compound(Elem a) const {
  if (m_ == 1)
    return false;
  const auto d = digits(a);
  int nonzero = 0;
  for (auto x : d)
    nonzero += x != 0;
  return nonzero > 1;
}

namespace {
void check_same(const FqElem &a, const FqElem &b) {
  if (a.field() != b.field())
    throw SpecMismatch("elements of " + a.field()->name() + " and " + b.field()->name());
}
} // namespace

FqElem operator+(const FqElem &a, const FqElem &b) {
  check_same(a, b);
  return {a.field_, a.field_->add(a.v_, b.v_)};
}
FqElem operator-(const FqElem &a, const FqElem &b) {
  check_same(a, b);
  return {a.field_, a.field_->sub(a.v_, b.v_)};
}
FqElem operator*(const FqElem &a, const FqElem &b) {
  check_same(a, b);
  return {a.field_, a.field_->mul(a.v_, b.v_)};
}
FqElem operator/(const FqElem &a, const FqElem &b) {
  check_same(a, b);
  return {a.field_, a.field_->div(a.v_, b.v_)};
}

FqElem fq_arith(FqOp op, const FqElem &x, const std::optional<FqElem> &y) {
  if (op == FqOp::Inv)
    return x.inverse();
  if (!y)
    throw DomainError("MissingOperand", "binary field operation needs two operands");
  switch (op) {
  case FqOp::Add:
    return x + *y;
  case FqOp::Sub:
    return x - *y;
  case FqOp::Mul:
    return x * *y;
  default:
    break;
  }
  return x;
}

FqElem frobenius_inv(const FqElem &x) { return {x.field(), x.field()->frobenius_inv(x.value())}; }

FieldPtr parse_field_spec(const std::string &text) {
  static const std::regex re(R"(\s*GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\)\s*)");
  std::smatch mt;
  if (!std::regex_match(text, mt, re))
    throw ParseError("malformed field literal '" + text + "'", 0, "GF(p) or GF(p^m)");
  const std::uint64_t base = std::stoull(mt[1].str());
  unsigned m = mt[2].matched ? static_cast<unsigned>(std::stoul(mt[2].str())) : 1;
  if (!mt[2].matched && !is_prime(base)) {
    // GF(q) with q a prime power.
    for (std::uint64_t p = 2; p * p <= base; ++p) {
      if (base % p)
        continue;
      std::uint64_t v = base;
      unsigned e = 0;
      while (v % p == 0) {
        v /= p;
        ++e;
      }
      if (v == 1 && is_prime(p))
        return FiniteField::get(p, e);
      break;
    }
    throw ParseError("field order " + std::to_string(base) + " is not a prime power", 0);
  }
  return FiniteField::get(base, m);
}

} // namespace pcl
