#include "eval_field.hpp"

#include "pcl/polynomial.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <random>

namespace pcl::detail {

namespace {
constexpr std::uint64_t kMinOrder = 500;
}

EvalField::EvalField(const FiniteField &base) : base_(&base) {
  if (base.order() >= kMinOrder) {
    direct_ = true;
    q_ = base.order();
    return;
  }
  p_ = base.characteristic();
  const unsigned m = base.degree();
  k_ = m;
  q_ = base.order();
  while (q_ < kMinOrder) {
    k_ += m;
    for (unsigned i = 0; i < m; ++i)
      q_ *= p_;
  }
  low_.assign(k_, 0);
  exp_.assign(q_, 0);
  log_.assign(q_, 0);
  // First modulus (in counting order) for which x has full order.
  for (std::uint64_t cand = 1;; ++cand) {
    std::uint64_t c = cand;
    for (unsigned i = 0; i < k_; ++i) {
      low_[i] = static_cast<std::uint32_t>(c % p_);
      c /= p_;
    }
    if (low_[0] == 0)
      continue;
    Elem e = 1;
    std::uint64_t n = 0;
    do {
      exp_[n++] = e;
      e = mul_by_x(e);
    } while (e != 1 && n < q_ - 1);
    if (e == 1 && n == q_ - 1)
      break;
  }
  for (std::uint64_t i = 0; i + 1 < q_; ++i)
    log_[exp_[i]] = static_cast<std::uint32_t>(i);

  // Embed the base field through a root of its defining polynomial.
  const auto &mod = base.modulus();
  Elem beta = 0;
  if (m == 1) {
    beta = 0;
  } else {
    for (Elem cand = 1; cand < q_; ++cand) {
      Elem acc = 0;
      for (std::size_t i = mod.size(); i-- > 0;)
        acc = add(mul(acc, cand), mod[i] % p_);
      if (acc == 0) {
        beta = cand;
        break;
      }
    }
  }
  embed_.assign(base.order(), 0);
  for (FiniteField::Elem x = 0; x < base.order(); ++x) {
    const auto d = base.digits(x);
    Elem acc = 0;
    for (std::size_t i = d.size(); i-- > 0;)
      acc = add(m == 1 ? 0 : mul(acc, beta), d[i]);
    embed_[x] = acc;
  }
}

EvalField::Elem EvalField::mul_by_x(Elem a) const {
  // Digits are base-p, least significant first.
  std::uint32_t d[32];
  for (unsigned i = 0; i < k_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  const std::uint32_t top = d[k_ - 1];
  Elem r = 0;
  for (unsigned i = k_; i-- > 0;) {
    const std::uint32_t prev = i ? d[i - 1] : 0;
    const std::uint32_t v = (prev + (p_ - (top * low_[i]) % p_)) % p_;
    r = r * p_ + v;
  }
  return r;
}

EvalField::Elem EvalField::add(Elem a, Elem b) const {
  if (direct_)
    return base_->add(a, b);
  Elem r = 0, scale = 1;
  while (a || b) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

EvalField::Elem EvalField::sub(Elem a, Elem b) const {
  if (direct_)
    return base_->sub(a, b);
  Elem r = 0, scale = 1;
  while (a || b) {
    r += ((a % p_ + p_ - b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

EvalField::Elem EvalField::mul(Elem a, Elem b) const {
  if (direct_)
    return base_->mul(a, b);
  if (!a || !b)
    return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) + log_[b]) % (q_ - 1)];
}

EvalField::Elem EvalField::inv(Elem a) const {
  if (direct_)
    return base_->inv(a);
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

EvalField::Elem EvalField::pow(Elem a, std::uint64_t e) const {
  if (direct_)
    return base_->pow(a, e);
  if (e == 0)
    return 1;
  if (!a)
    return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
}

const EvalField &EvalField::for_field(const FiniteField &base) {
  static std::mutex mu;
  static std::map<const FiniteField *, std::unique_ptr<EvalField>> cache;
  std::lock_guard lock(mu);
  auto &slot = cache[&base];
  if (!slot)
    slot = std::make_unique<EvalField>(base);
  return *slot;
}

namespace {

using Dense = std::vector<EvalField::Elem>;

Dense image(const MPoly &a, std::size_t var, const std::vector<EvalField::Elem> &pt, const EvalField &F) {
  Dense out(a.degree(var) + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto e = a.exps(i);
    EvalField::Elem c = F.embed(a.coeff(i));
    for (std::size_t v = 0; v < e.size() && c; ++v)
      if (v != var && e[v])
        c = F.mul(c, F.pow(pt[v], e[v]));
    out[e[var]] = F.add(out[e[var]], c);
  }
  return out;
}

void trim(Dense &a) {
  while (!a.empty() && a.back() == 0)
    a.pop_back();
}

int dense_gcd_degree(Dense a, Dense b, const EvalField &F) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const auto li = F.inv(b.back());
    while (a.size() >= b.size()) {
      const auto c = F.mul(a.back(), li);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i)
        a[i + shift] = F.sub(a[i + shift], F.mul(c, b[i]));
      trim(a);
      if (a.empty())
        break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

} // namespace

int image_gcd_degree(const MPoly &a, const MPoly &b, std::size_t var, std::uint64_t seed) {
  const auto &F = EvalField::for_field(a.field());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, F.order() - 1);
  std::vector<EvalField::Elem> pt(a.nvars(), 0);
  for (auto &x : pt)
    x = static_cast<EvalField::Elem>(pick(rng));
  const Dense ia = image(a, var, pt, F), ib = image(b, var, pt, F);
  if (ia.back() == 0 || ib.back() == 0)
    return -1;
  return dense_gcd_degree(ia, ib, F);
}

} // namespace pcl::detail
