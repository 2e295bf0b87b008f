#include "ietk/exact.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ietk {

Rational parse_rational(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw Error("empty rational literal");
  std::string num = t, den = "1";
  if (auto slash = t.find('/'); slash != std::string::npos) {
    num = t.substr(0, slash);
    den = t.substr(slash + 1);
  }
  auto digits_ok = [](const std::string& d, bool sign_ok) {
    if (d.empty()) return false;
    std::size_t i = (sign_ok && (d[0] == '-' || d[0] == '+')) ? 1 : 0;
    if (i == d.size()) return false;
    for (; i < d.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(d[i]))) return false;
    return true;
  };
  if (!digits_ok(num, true) || !digits_ok(den, false))
    throw Error("malformed rational literal: '" + s + "'");
  mpz_class n(num), d(den);
  if (d == 0) throw Error("zero denominator in rational literal: '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string rational_str(const Rational& q) {
  mpq_class c = q;
  return c.get_str();
}

std::string decimal_str(const Rational& q, int digits) {
  if (digits < 0) digits = 0;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // round(q * 10^digits) half away from zero
  mpz_class num = q.get_num() * scale;
  mpz_class den = q.get_den();
  mpz_class twice = 2 * num;
  mpz_class r;
  if (num >= 0)
    mpz_fdiv_q(r.get_mpz_t(), mpz_class(twice + den).get_mpz_t(), mpz_class(2 * den).get_mpz_t());
  else {
    mpz_class m = -twice + den;
    mpz_fdiv_q(r.get_mpz_t(), m.get_mpz_t(), mpz_class(2 * den).get_mpz_t());
    r = -r;
  }
  bool neg = r < 0;
  mpz_class a = abs(r);
  mpz_class ip = a / scale, fp = a % scale;
  std::string out = neg && (ip != 0 || fp != 0) ? "-" : "";
  out += ip.get_str();
  if (digits > 0) {
    std::string f = fp.get_str();
    out += "." + std::string(digits - f.size(), '0') + f;
  }
  return out;
}

std::size_t hash_combine(std::size_t a, std::size_t b) {
  // splitmix-style mix
  a ^= b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2);
  return a;
}

std::size_t hash_rational(const Rational& q) {
  std::size_t hn = mpz_fdiv_ui(q.get_num().get_mpz_t(), 0x1fffffffffffffffULL);
  std::size_t hd = mpz_fdiv_ui(q.get_den().get_mpz_t(), 0x1fffffffffffffffULL);
  return hash_combine(hn * 0x9ddfea08eb382d69ULL, hd);
}

// ---------------------------------------------------------------------------
// SymbolBasis

std::shared_ptr<const SymbolBasis> SymbolBasis::make(std::vector<SymbolSpec> symbols,
                                                     bool independent, int refine_budget) {
  auto b = std::shared_ptr<SymbolBasis>(new SymbolBasis);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const auto& s = symbols[i];
    if (s.name.empty()) throw Error("symbol needs a name");
    if (!(s.lo < s.hi))
      throw Error("symbol '" + s.name + "': enclosure must have positive width");
    for (std::size_t j = 0; j < i; ++j)
      if (symbols[j].name == s.name) throw Error("duplicate symbol name '" + s.name + "'");
    for (std::size_t t = 1; t < s.cf_terms.size(); ++t)
      if (s.cf_terms[t] <= 0)
        throw Error("symbol '" + s.name + "': continued fraction terms after the first must be positive");
  }
  if (refine_budget < 1) throw Error("refine budget must be >= 1");
  b->symbols_ = std::move(symbols);
  b->independent_ = independent;
  b->budget_ = refine_budget;
  b->cache_.resize(b->symbols_.size());
  return b;
}

std::optional<std::size_t> SymbolBasis::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return i;
  return std::nullopt;
}

int SymbolBasis::max_level(std::size_t i) const {
  const auto& terms = symbol(i).cf_terms;
  return terms.size() >= 2 ? static_cast<int>(terms.size()) - 1 : 0;
}

std::pair<Rational, Rational> SymbolBasis::enclosure(std::size_t i, int level) const {
  const SymbolSpec& s = symbol(i);
  if (level <= 0) return {s.lo, s.hi};
  if (level > max_level(i)) level = max_level(i);
  if (level == 0) return {s.lo, s.hi};

  std::lock_guard<std::mutex> lock(mu_);
  auto& levels = cache_[i];
  if (static_cast<int>(levels.size()) >= level) return levels[level - 1];

  // Convergents h_r/k_r of [a0; a1, ...]; consecutive convergents bracket the
  // value, so level r is [min,max](c_{r-1}, c_r) intersected with level r-1.
  mpz_class h_prev = 1, k_prev = 0;  // h_{-1}/k_{-1}
  mpz_class h = s.cf_terms[0], k = 1;
  std::vector<Rational> conv{Rational(h, k)};
  for (std::size_t t = 1; t < s.cf_terms.size(); ++t) {
    mpz_class h2 = s.cf_terms[t] * h + h_prev;
    mpz_class k2 = s.cf_terms[t] * k + k_prev;
    h_prev = h;
    k_prev = k;
    h = h2;
    k = k2;
    Rational c(h, k);
    c.canonicalize();
    conv.push_back(c);
  }
  std::pair<Rational, Rational> cur{s.lo, s.hi};
  levels.clear();
  for (int r = 1; r <= max_level(i); ++r) {
    Rational a = conv[r - 1], b = conv[r];
    if (a > b) std::swap(a, b);
    a = std::max(a, cur.first);
    b = std::min(b, cur.second);
    if (a > b)
      throw Error("symbol '" + s.name +
                  "': continued fraction leaves the declared enclosure");
    cur = {a, b};
    levels.push_back(cur);
  }
  return levels[level - 1];
}

// ---------------------------------------------------------------------------
// ExactReal

// A null basis carries rational values only; mixing two distinct real bases
// is always a bug.
static void require_compatible(const ExactReal& a, const ExactReal& b) {
  if (a.basis() && b.basis() && a.basis() != b.basis())
    throw Error("mixing values from different symbol bases");
}

ExactReal ExactReal::rational(Rational q, BasisPtr basis) {
  return from_coeffs(std::move(q), {}, std::move(basis));
}

ExactReal ExactReal::rational(long p, long q, BasisPtr basis) {
  if (q == 0) throw Error("zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return from_coeffs(std::move(r), {}, std::move(basis));
}

ExactReal ExactReal::symbol(std::size_t index, BasisPtr basis) {
  if (!basis || index >= basis->size()) throw Error("symbol index out of range");
  return from_coeffs(0, {{index, Rational(1)}}, std::move(basis));
}

ExactReal ExactReal::symbol(const std::string& name, BasisPtr basis) {
  if (!basis) throw Error("null basis");
  auto idx = basis->index_of(name);
  if (!idx) throw Error("unknown symbol '" + name + "'");
  return symbol(*idx, std::move(basis));
}

ExactReal ExactReal::from_coeffs(Rational unit,
                                 std::vector<std::pair<std::size_t, Rational>> coeffs,
                                 BasisPtr basis) {
  ExactReal x;
  x.basis_ = std::move(basis);
  x.unit_ = std::move(unit);
  std::sort(coeffs.begin(), coeffs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [i, c] : coeffs) {
    if (!x.basis_ || i >= x.basis_->size()) throw Error("symbol index out of range");
    if (c == 0) continue;
    if (!x.coeffs_.empty() && x.coeffs_.back().first == i)
      throw Error("duplicate symbol index in coefficient list");
    x.coeffs_.emplace_back(i, std::move(c));
  }
  return x;
}

const Rational& ExactReal::to_rational() const {
  if (!coeffs_.empty()) throw Error("value is not rational: " + str());
  return unit_;
}

ExactReal ExactReal::operator+(const ExactReal& o) const {
  require_compatible(*this, o);
  ExactReal r;
  r.basis_ = basis_ ? basis_ : o.basis_;
  r.unit_ = unit_ + o.unit_;
  std::size_t i = 0, j = 0;
  while (i < coeffs_.size() || j < o.coeffs_.size()) {
    if (j == o.coeffs_.size() || (i < coeffs_.size() && coeffs_[i].first < o.coeffs_[j].first))
      r.coeffs_.push_back(coeffs_[i++]);
    else if (i == coeffs_.size() || o.coeffs_[j].first < coeffs_[i].first)
      r.coeffs_.push_back(o.coeffs_[j++]);
    else {
      Rational c = coeffs_[i].second + o.coeffs_[j].second;
      if (c != 0) r.coeffs_.emplace_back(coeffs_[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return r;
}

ExactReal ExactReal::operator-() const {
  ExactReal r = *this;
  r.unit_ = -r.unit_;
  for (auto& [i, c] : r.coeffs_) c = -c;
  return r;
}

ExactReal ExactReal::operator-(const ExactReal& o) const { return *this + (-o); }

ExactReal ExactReal::scaled(const Rational& q) const {
  ExactReal r;
  r.basis_ = basis_;
  if (q == 0) return r;
  r.unit_ = unit_ * q;
  for (const auto& [i, c] : coeffs_) r.coeffs_.emplace_back(i, Rational(c * q));
  return r;
}

bool ExactReal::operator==(const ExactReal& o) const {
  if (unit_ != o.unit_ || coeffs_.size() != o.coeffs_.size()) return false;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i].first != o.coeffs_[i].first || coeffs_[i].second != o.coeffs_[i].second)
      return false;
  return true;
}

std::pair<Rational, Rational> ExactReal::enclosure(int level) const {
  Rational lo = unit_, hi = unit_;
  for (const auto& [i, c] : coeffs_) {
    auto [slo, shi] = basis_->enclosure(i, level);
    if (c >= 0) {
      lo += c * slo;
      hi += c * shi;
    } else {
      lo += c * shi;
      hi += c * slo;
    }
  }
  return {lo, hi};
}

std::size_t ExactReal::hash() const {
  std::size_t h = hash_rational(unit_);
  for (const auto& [i, c] : coeffs_) h = hash_combine(h, hash_combine(i, hash_rational(c)));
  return h;
}

std::string ExactReal::str() const {
  std::ostringstream os;
  bool first = true;
  if (unit_ != 0 || coeffs_.empty()) {
    os << rational_str(unit_);
    first = false;
  }
  for (const auto& [i, c] : coeffs_) {
    if (!first) os << (c >= 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    mpq_class a = abs(c);
    if (a != 1) os << rational_str(a) << "*";
    os << basis_->symbol(i).name;
  }
  return os.str();
}

std::string ExactReal::decimal(int digits) const {
  if (coeffs_.empty()) return decimal_str(unit_, digits);
  Rational target(1);
  for (int i = 0; i < digits + 2; ++i) target /= 10;
  int budget = basis_->refine_budget();
  for (int level = 0;; ++level) {
    auto [lo, hi] = enclosure(level);
    bool exhausted = true;
    for (const auto& [i, c] : coeffs_)
      if (level < basis_->max_level(i)) exhausted = false;
    if (hi - lo < target || exhausted || level >= budget) {
      Rational mid = (lo + hi) / 2;
      return decimal_str(mid, digits);
    }
  }
}

// ---------------------------------------------------------------------------
// comparison / reduction / span

Ordering cmp(const ExactReal& a, const ExactReal& b) {
  ExactReal z = a - b;
  if (z.is_rational()) {
    int s = sgn(z.unit());
    return s < 0 ? Ordering::LT : (s > 0 ? Ordering::GT : Ordering::EQ);
  }
  const auto& basis = *z.basis();
  if (!basis.independent())
    throw UndecidedComparison(
        "cannot compare over a basis not declared rationally independent: " + z.str() +
        " vs 0");
  int budget = basis.refine_budget();
  for (int level = 0; level <= budget; ++level) {
    auto [lo, hi] = z.enclosure(level);
    if (lo > 0) return Ordering::GT;
    if (hi < 0) return Ordering::LT;
    bool exhausted = true;
    for (const auto& [i, c] : z.sym_coeffs())
      if (level < basis.max_level(i)) exhausted = false;
    if (exhausted)
      throw UndecidedComparison("comparison undecided, enclosure refiners exhausted: sign of " +
                                z.str());
  }
  throw UndecidedComparison("comparison undecided after refinement budget (" +
                            std::to_string(budget) + " levels): sign of " + z.str());
}

int sign(const ExactReal& a) {
  switch (cmp(a, ExactReal())) {
    case Ordering::LT: return -1;
    case Ordering::EQ: return 0;
    case Ordering::GT: return 1;
  }
  return 0;
}

long mod_interval_quotient(const ExactReal& x, const ExactReal& len) {
  if (sign(len) <= 0) throw Error("mod_interval needs positive length");
  // Rational fast path.
  if (x.is_rational() && len.is_rational()) {
    Rational q = x.to_rational() / len.to_rational();
    mpz_class n;
    mpz_fdiv_q(n.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    if (!n.fits_slong_p()) throw Error("mod_interval quotient overflows");
    return n.get_si();
  }
  // Estimate the quotient from enclosures, then correct by exact comparison.
  long n = 0;
  {
    int level = 0;
    const int cap = x.basis() ? x.basis()->refine_budget() : 8;
    for (; level <= cap; ++level) {
      auto [xl, xh] = x.enclosure(level);
      auto [ll, lh] = len.enclosure(level);
      if (ll <= 0) continue;  // refine until the length interval clears 0
      Rational qlo = xl / (xl >= 0 ? lh : ll);
      Rational qhi = xh / (xh >= 0 ? ll : lh);
      mpz_class fl;
      mpz_fdiv_q(fl.get_mpz_t(), qlo.get_num().get_mpz_t(), qlo.get_den().get_mpz_t());
      if (!fl.fits_slong_p()) throw Error("mod_interval quotient overflows");
      n = fl.get_si();
      if (qhi - qlo < 1) break;
    }
  }
  while (sign(x - len.scaled(n)) < 0) --n;
  while (cmp(x - len.scaled(n), len) != Ordering::LT) ++n;
  return n;
}

ExactReal mod_interval(const ExactReal& x, const ExactReal& len) {
  return x - len.scaled(mod_interval_quotient(x, len));
}

std::optional<std::vector<Rational>> in_q_span(const ExactReal& x,
                                               const std::vector<ExactReal>& gens) {
  // Coordinates: the unit row plus one row per symbol occurring anywhere.
  std::vector<std::size_t> syms;
  auto note = [&syms](const ExactReal& v) {
    for (const auto& [i, c] : v.sym_coeffs())
      if (std::find(syms.begin(), syms.end(), i) == syms.end()) syms.push_back(i);
  };
  note(x);
  for (const auto& g : gens) note(g);
  std::sort(syms.begin(), syms.end());

  std::size_t rows = 1 + syms.size(), cols = gens.size();
  auto coeff_of = [&syms](const ExactReal& v, std::size_t row) -> Rational {
    if (row == 0) return v.unit();
    std::size_t sym = syms[row - 1];
    for (const auto& [i, c] : v.sym_coeffs())
      if (i == sym) return c;
    return Rational(0);
  };
  // Augmented matrix [A | x], Gauss-Jordan over Q.
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m[r][c] = coeff_of(gens[c], r);
    m[r][cols] = coeff_of(x, r);
  }
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    Rational inv = 1 / m[rank][c];
    for (auto& v : m[rank]) v *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rational f = m[r][c];
      for (std::size_t k = c; k <= cols; ++k) m[r][k] -= f * m[rank][k];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r)
    if (m[r][cols] != 0) return std::nullopt;  // inconsistent: x outside the span
  std::vector<Rational> q(cols, Rational(0));
  for (std::size_t r = 0; r < rank; ++r) q[pivot_col[r]] = m[r][cols];
  return q;
}

}  // namespace ietk
