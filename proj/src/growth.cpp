#include "garside/growth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <type_traits>
#include <unordered_map>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include "garside/error.hpp"
#include "garside/stats.hpp"

namespace garside {

std::size_t TransferMatrix::entries() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.size();
  return n;
}

bool TransferMatrix::at(std::size_t i, std::size_t j) const {
  const auto& r = rows.at(i);
  return std::binary_search(r.begin(), r.end(), static_cast<std::uint32_t>(j));
}

namespace {

std::vector<Simple> proper_simples(const GarsideStructure& g, const GrowthLimits& limits) {
  if (!g.table_mode()) {
    throw UsageError("transfer matrices need the simple elements as a table; " + g.label() + " is not in table mode");
  }
  std::vector<Simple> out;
  for (std::size_t i = 0; i < g.simple_count(); ++i) {
    const Simple s = g.simple_at(i);
    if (s != g.identity() && s != g.delta()) out.push_back(s);
  }
  if (out.size() > limits.max_states) {
    throw CapacityError("element matrix of " + g.label() + " has " + std::to_string(out.size()) +
                        " states, above max-table-simples = " + std::to_string(limits.max_states));
  }
  return out;
}

}  // namespace

TransferMatrix build_element_matrix(const GarsideStructure& g, const GrowthLimits& limits) {
  TransferMatrix m;
  m.simple_states = proper_simples(g, limits);
  const auto& st = m.simple_states;
  m.rows.resize(st.size());
  for (std::size_t i = 0; i < st.size(); ++i) {
    for (std::size_t j = 0; j < st.size(); ++j) {
      if (is_left_weighted(g, st[i], st[j])) m.rows[i].push_back(static_cast<std::uint32_t>(j));
    }
  }
  return m;
}

TransferMatrix build_pseq_matrix(const GarsideStructure& g, const GrowthLimits& limits) {
  const std::vector<Simple> proper = proper_simples(g, limits);
  const std::size_t n = proper.size();
  std::unordered_map<Simple, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(proper[i], i);

  TransferMatrix m;
  std::vector<std::int64_t> state_of(n * n, -1);  // (s, m) -> state
  std::vector<Simple> product;                     // s m per state
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto sm = g.multiply(proper[i], proper[j]);
      if (!sm) continue;
      state_of[i * n + j] = static_cast<std::int64_t>(m.pair_states.size());
      m.pair_states.emplace_back(proper[i], proper[j]);
      product.push_back(*sm);
      if (m.pair_states.size() > limits.max_states) {
        throw CapacityError("penetration-sequence matrix of " + g.label() + " exceeds max-table-simples = " +
                            std::to_string(limits.max_states) + " states");
      }
    }
  }

  m.rows.resize(m.pair_states.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Simple c = g.complement(proper[i]);
    for (std::size_t j = 0; j < m.pair_states.size(); ++j) {
      if (product[j] == g.delta()) continue;
      if (g.meet(c, m.pair_states[j].first) != g.identity()) continue;
      const Simple mm = g.meet(c, product[j]);
      if (mm == g.identity()) continue;
      // mm divides the complement of s, so (s, mm) is a state
      const std::int64_t from = state_of[i * n + index.at(mm)];
      m.rows[static_cast<std::size_t>(from)].push_back(static_cast<std::uint32_t>(j));
    }
  }
  for (auto& r : m.rows) std::sort(r.begin(), r.end());
  return m;
}

std::vector<mpz_class> count_series(const TransferMatrix& m, std::size_t k_max) {
  std::vector<mpz_class> out{1};
  std::vector<mpz_class> v(m.size(), 1), next(m.size());
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (k > 1) {
      for (std::size_t i = 0; i < m.size(); ++i) {
        next[i] = 0;
        for (auto j : m.rows[i]) next[i] += v[j];
      }
      v.swap(next);
    }
    mpz_class total = 0;
    for (const auto& x : v) total += x;
    out.push_back(total);
  }
  return out;
}

LumpedMatrix lump(const TransferMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::uint32_t> block(n, 0);
  std::size_t blocks = n == 0 ? 0 : 1;
  for (;;) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    std::vector<std::uint32_t> next(n);
    std::vector<std::uint32_t> sig;
    for (std::size_t i = 0; i < n; ++i) {
      sig.clear();
      for (auto j : m.rows[i]) sig.push_back(block[j]);
      std::sort(sig.begin(), sig.end());
      sig.insert(sig.begin(), block[i]);
      const auto [it, fresh] = ids.emplace(sig, static_cast<std::uint32_t>(ids.size()));
      next[i] = it->second;
    }
    block.swap(next);
    if (ids.size() == blocks) break;
    blocks = ids.size();
  }

  LumpedMatrix out;
  out.block_size.assign(blocks, 0);
  out.rows.resize(blocks);
  std::vector<bool> done(blocks, false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = block[i];
    ++out.block_size[b];
    if (done[b]) continue;
    done[b] = true;
    std::map<std::uint32_t, std::uint32_t> counts;
    for (auto j : m.rows[i]) ++counts[block[j]];
    out.rows[b].assign(counts.begin(), counts.end());
  }
  return out;
}

std::vector<mpz_class> count_series(const LumpedMatrix& m, std::size_t k_max) {
  std::vector<mpz_class> out{1};
  std::vector<mpz_class> v(m.size(), 1), next(m.size());
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (k > 1) {
      for (std::size_t i = 0; i < m.size(); ++i) {
        next[i] = 0;
        for (const auto& [j, mult] : m.rows[i]) next[i] += v[j] * mult;
      }
      v.swap(next);
    }
    mpz_class total = 0;
    for (std::size_t i = 0; i < m.size(); ++i) total += v[i] * m.block_size[i];
    out.push_back(total);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polynomials

namespace {

using QPoly = std::vector<mpq_class>;  // low to high

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// quotient and remainder over Q
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const mpq_class f = a.back() / b.back();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const mpq_class lead = a.back();
    for (auto& x : a) x /= lead;
  }
  return a;
}

QPoly to_q(const Polynomial& p) { return QPoly(p.c.begin(), p.c.end()); }

int exact_gcd_degree(const Polynomial& a, const Polynomial& b) {
  return static_cast<int>(gcd(to_q(a), to_q(b)).size()) - 1;
}

// modular arithmetic for recurrence search and coprimality tests

constexpr std::uint64_t kFirstPrime = (std::uint64_t{1} << 62) - 57;  // prime
constexpr int kMaxPrimes = 400;

std::uint64_t next_prime(std::uint64_t p) {
  mpz_class x(static_cast<unsigned long>(p));
  mpz_nextprime(x.get_mpz_t(), x.get_mpz_t());
  return x.get_ui();
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mulmod(a, a, p)) {
    if (e & 1) r = mulmod(r, a, p);
  }
  return r;
}

std::uint64_t residue(const mpz_class& x, std::uint64_t p) {
  return mpz_fdiv_ui(x.get_mpz_t(), p);
}

std::pair<std::size_t, std::vector<std::uint64_t>> berlekamp_massey_mod(const std::vector<mpz_class>& s,
                                                                        std::uint64_t p) {
  std::vector<std::uint64_t> x(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) x[i] = residue(s[i], p);
  std::vector<std::uint64_t> c{1}, b{1};
  std::size_t len = 0, shift = 1;
  std::uint64_t bd = 1;
  for (std::size_t k = 0; k < x.size(); ++k) {
    std::uint64_t d = x[k];
    for (std::size_t i = 1; i <= len && i < c.size(); ++i) d = (d + mulmod(c[i], x[k - i], p)) % p;
    if (d == 0) {
      ++shift;
      continue;
    }
    const std::uint64_t f = mulmod(d, powmod(bd, p - 2, p), p);
    const auto t = c;
    if (c.size() < b.size() + shift) c.resize(b.size() + shift, 0);
    for (std::size_t i = 0; i < b.size(); ++i) c[i + shift] = (c[i + shift] + p - mulmod(f, b[i], p)) % p;
    if (2 * len <= k) {
      len = k + 1 - len;
      b = t;
      bd = d;
      shift = 1;
    } else {
      ++shift;
    }
  }
  return {len, c};
}

// x := the solution mod m*p of x = x (mod m), x = r (mod p)
void crt_step(std::vector<mpz_class>& x, mpz_class& m, const std::vector<std::uint64_t>& r, std::uint64_t p) {
  const std::uint64_t minv = powmod(residue(m, p), p - 2, p);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::uint64_t diff = (r[i] + p - residue(x[i], p)) % p;
    x[i] += m * static_cast<unsigned long>(mulmod(diff, minv, p));
  }
  m *= static_cast<unsigned long>(p);
}

// degree of gcd(a mod p, b mod p)
int gcd_degree_mod(const Polynomial& a, const Polynomial& b, std::uint64_t p) {
  auto reduce = [p](const Polynomial& q) {
    std::vector<std::uint64_t> r(q.c.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = residue(q.c[i], p);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  };
  auto u = reduce(a), v = reduce(b);
  while (!v.empty()) {
    const std::uint64_t inv = powmod(v.back(), p - 2, p);
    while (u.size() >= v.size() && !u.empty()) {
      const std::uint64_t f = mulmod(u.back(), inv, p);
      const std::size_t sh = u.size() - v.size();
      for (std::size_t i = 0; i < v.size(); ++i) u[sh + i] = (u[sh + i] + p - mulmod(f, v[i], p)) % p;
      while (!u.empty() && u.back() == 0) u.pop_back();
    }
    std::swap(u, v);
  }
  return static_cast<int>(u.size()) - 1;
}

// true if a and b have no common factor of positive degree; a modular gcd of
// degree 0 at a prime dividing neither leading coefficient proves it
bool coprime(const Polynomial& a, const Polynomial& b) {
  if (a.degree() <= 0 || b.degree() <= 0) return !(a.is_zero() && b.degree() > 0);
  std::uint64_t p = kFirstPrime;
  for (int i = 0; i < 3; ++i, p = next_prime(p)) {
    if (residue(a.c.back(), p) == 0 || residue(b.c.back(), p) == 0) continue;
    if (gcd_degree_mod(a, b, p) == 0) return true;
  }
  return exact_gcd_degree(a, b) == 0;
}


Polynomial to_z(const QPoly& p, const char* what) {
  std::vector<mpz_class> c;
  for (const auto& x : p) {
    if (x.get_den() != 1) throw DomainError(std::string("generating function: non-integral ") + what);
    c.push_back(x.get_num());
  }
  return Polynomial(std::move(c));
}

std::string power(std::size_t i) {
  if (i == 0) return "";
  if (i == 1) return "z";
  return "z^" + std::to_string(i);
}

nlohmann::json coeff_json(const mpz_class& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

}  // namespace

Polynomial::Polynomial(std::vector<mpz_class> coeffs) : c(std::move(coeffs)) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Polynomial Polynomial::from_ints(const std::vector<long>& coeffs) {
  std::vector<mpz_class> c;
  for (long x : coeffs) c.emplace_back(x);
  return Polynomial(std::move(c));
}

mpq_class Polynomial::eval(const mpq_class& z) const {
  mpq_class acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

std::string Polynomial::to_string() const {
  if (c.empty()) return "0";
  std::string out;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    const mpz_class a = abs(c[i]);
    if (c[i] < 0) out += "-";
    else if (!out.empty()) out += "+";
    if (a != 1 || i == 0) out += a.get_str();
    out += power(i);
  }
  return out;
}

nlohmann::json Polynomial::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& x : c) j.push_back(coeff_json(x));
  return j;
}

RationalGF RationalGF::normalized(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw UsageError("generating function: zero denominator");
  QPoly n = to_q(num), d = to_q(den);
  if (!coprime(num, den)) {
    const QPoly g = gcd(n, d);
    n = divmod(n, g).first;
    d = divmod(d, g).first;
  }
  if (d.front() == 0) throw DomainError("generating function: pole at 0");
  const mpq_class d0 = d.front();
  for (auto& x : n) x /= d0;
  for (auto& x : d) x /= d0;
  return RationalGF{to_z(n, "numerator"), to_z(d, "denominator")};
}

std::vector<mpz_class> RationalGF::expand(std::size_t terms) const {
  std::vector<mpz_class> s(terms);
  for (std::size_t k = 0; k < terms; ++k) {
    mpz_class v = num[k];
    for (std::size_t i = 1; i < den.c.size() && i <= k; ++i) v -= den.c[i] * s[k - i];
    s[k] = v;  // den(0) = 1
  }
  return s;
}

std::string RationalGF::to_string() const {
  if (is_polynomial()) return num.to_string();
  return "(" + num.to_string() + ")/(" + den.to_string() + ")";
}

nlohmann::json RationalGF::to_json() const { return {{"num", num.to_json()}, {"den", den.to_json()}}; }

// ---------------------------------------------------------------------------

RationalGF generating_function(const std::vector<mpz_class>& series, std::size_t dim) {
  const std::size_t need = 2 * dim + 2;
  if (series.size() < need) {
    throw NeedsMoreTermsError("generating function: " + std::to_string(series.size()) + " terms, need " +
                              std::to_string(need));
  }
  // The shortest recurrence has integer coefficients with constant term 1 (it
  // divides the reversed characteristic polynomial of an integer matrix). Find
  // it modulo several primes, lift by CRT until the lift stops changing and
  // reproduces the whole prefix exactly.
  const std::vector<mpz_class> prefix(series.begin(), series.begin() + static_cast<std::ptrdiff_t>(need));
  std::size_t len = 0;
  std::vector<mpz_class> lifted, previous;
  mpz_class modulus = 1;
  std::uint64_t p = kFirstPrime;
  for (int round = 0; round < kMaxPrimes; ++round, p = next_prime(p)) {
    auto [lp, cp] = berlekamp_massey_mod(prefix, p);
    if (lp < len) continue;  // p divides a discrepancy; skip it
    if (lp > len) {
      len = lp;
      lifted.assign(len + 1, 0);
      modulus = 1;
      previous.clear();
    }
    cp.resize(len + 1, 0);
    crt_step(lifted, modulus, cp, p);
    std::vector<mpz_class> sym = lifted;
    const mpz_class half = modulus / 2;
    for (auto& x : sym) {
      if (x > half) x -= modulus;
    }
    if (sym == previous) {
      if (len > dim + 1) break;
      Polynomial den(sym);
      std::vector<mpz_class> num(len, 0);
      for (std::size_t k = 0; k < len; ++k) {
        for (std::size_t i = 0; i <= k && i < den.c.size(); ++i) num[k] += den.c[i] * series[k - i];
      }
      RationalGF gf = RationalGF::normalized(Polynomial(std::move(num)), den);
      if (gf.expand(series.size()) == series) return gf;
      throw NeedsMoreTermsError("generating function: recurrence from " + std::to_string(need) +
                                " terms does not reproduce all " + std::to_string(series.size()) + " terms");
    }
    previous = std::move(sym);
  }
  throw NeedsMoreTermsError("generating function: recurrence of order " + std::to_string(len) +
                            " did not stabilize within " + std::to_string(need) + " terms");
}

namespace {

using BigFloat = boost::multiprecision::mpf_float_50;

// moduli of the roots of the monic polynomial sum_j c_j y^(e-j), c_0 = 1
template <class Real>
std::vector<double> root_moduli(const std::vector<mpq_class>& c) {
  using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  const int e = static_cast<int>(c.size()) - 1;
  Matrix comp = Matrix::Zero(e, e);
  for (int i = 1; i < e; ++i) comp(i, i - 1) = 1;
  for (int i = 0; i < e; ++i) {
    const mpq_class& x = c[static_cast<std::size_t>(e - i)];
    if constexpr (std::is_same_v<Real, double>) {
      comp(i, e - 1) = -x.get_d();
    } else {
      comp(i, e - 1) = -(Real(x.get_num().get_str()) / Real(x.get_den().get_str()));
    }
  }
  const auto roots = Eigen::EigenSolver<Matrix>(comp, false).eigenvalues();
  std::vector<double> out;
  for (int i = 0; i < e; ++i) {
    using std::abs;
    out.push_back(static_cast<double>(abs(roots[i])));
  }
  return out;
}

}  // namespace

GrowthRate growth_rate(const RationalGF& gf) {
  if (gf.den.is_zero() || gf.den.c.front() != 1) throw UsageError("growth rate: denominator must have constant term 1");
  if (!coprime(gf.num, gf.den)) throw UsageError("growth rate: fraction is not in lowest terms");
  GrowthRate out;
  const int e = gf.den.degree();
  if (e <= 0) {
    out.exact = true;
    return out;
  }
  // Poles are the reciprocals of the roots of the reversed denominator
  // x^e D(1/x), which is monic. Its coefficients can span dozens of orders of
  // magnitude, so substitute x = s y with s a power of two near the largest
  // root (estimated from the series) before taking companion eigenvalues.
  long scale_exp = 0;
  if (const auto est = ratio_estimate(gf.expand(401), 200); est && *est > 0) {
    scale_exp = std::lround(std::log2(*est));
  }
  mpq_class s = 1;
  if (scale_exp >= 0) mpz_mul_2exp(s.get_num_mpz_t(), s.get_num_mpz_t(), static_cast<unsigned long>(scale_exp));
  else mpz_mul_2exp(s.get_den_mpz_t(), s.get_den_mpz_t(), static_cast<unsigned long>(-scale_exp));
  std::vector<mpq_class> coeffs(static_cast<std::size_t>(e) + 1);  // D_j / s^j
  mpq_class sj = 1;
  for (int j = 0; j <= e; ++j) {
    coeffs[static_cast<std::size_t>(j)] = gf.den.c[static_cast<std::size_t>(j)] / sj;
    sj *= s;
  }

  // floating point locates the dominant pole; a sign change of the exact
  // denominator certifies it
  for (const bool extended : {false, true}) {
    const std::vector<double> moduli = extended ? root_moduli<BigFloat>(coeffs) : root_moduli<double>(coeffs);
    const double ymax = *std::max_element(moduli.begin(), moduli.end());
    out.poles_at_minimum = static_cast<std::size_t>(
        std::count_if(moduli.begin(), moduli.end(), [&](double m) { return m >= ymax * (1 - 1e-6); }));
    out.unique_minimal_pole = out.poles_at_minimum == 1;
    const double lmax = std::ldexp(ymax, static_cast<int>(scale_exp));
    out.rate = lmax;

    // the dominant pole of a non-negative series is real and positive
    const double q = std::round(lmax);
    if (q >= 1 && std::abs(lmax - q) < 1e-6 * q && gf.den.eval(mpq_class(1, mpz_class(q))) == 0) {
      out.rate = q;
      out.exact = out.certified = true;
      return out;
    }
    mpq_class lo(1 / lmax * (1 - 1e-7)), hi(1 / lmax * (1 + 1e-7));
    const int slo = sgn(gf.den.eval(lo));
    if (slo != 0 && slo != sgn(gf.den.eval(hi))) {
      for (int it = 0; it < 60; ++it) {
        mpq_class mid = (lo + hi) / 2;
        mid.canonicalize();
        if (sgn(gf.den.eval(mid)) == slo) lo = mid;
        else hi = mid;
      }
      out.rate = 1 / mpq_class((lo + hi) / 2).get_d();
      out.certified = true;
      return out;
    }
  }
  return out;
}

std::optional<double> ratio_estimate(const std::vector<mpz_class>& series, std::size_t h) {
  if (h == 0 || series.size() <= 2 * h || series[h] == 0 || series[2 * h] == 0) return std::nullopt;
  auto log_abs = [](const mpz_class& x) {
    long ex = 0;
    const double d = mpz_get_d_2exp(&ex, x.get_mpz_t());
    return std::log(std::abs(d)) + static_cast<double>(ex) * std::log(2.0);
  };
  return std::exp((log_abs(series[2 * h]) - log_abs(series[h])) / static_cast<double>(h));
}

std::optional<std::size_t> max_pseq_length(const TransferMatrix& m) {
  const LumpedMatrix q = lump(m);
  // a non-negative matrix with a vanishing count is nilpotent; that happens by k = dim + 1
  const auto s = count_series(q, q.size() + 1);
  for (std::size_t k = 1; k < s.size(); ++k) {
    if (s[k] == 0) return k - 1;
  }
  return std::nullopt;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pd_bounded: return "pd_bounded";
    case Verdict::expected_pd_bounded: return "expected_pd_bounded";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

SeriesAnalysis analyze(const TransferMatrix& m, const GrowthLimits& limits) {
  SeriesAnalysis a;
  a.states = m.size();
  const LumpedMatrix q = lump(m);
  a.lumped_states = q.size();
  // 2d+2 terms find the recurrence, the rest confirm it; 201 terms feed the ratio check
  const std::size_t terms = std::max<std::size_t>(3 * q.size() + 4, 201);
  if (terms > limits.max_series_terms) {
    throw CapacityError("needs " + std::to_string(terms) + " series terms, above max-series-terms = " +
                        std::to_string(limits.max_series_terms));
  }
  a.series = count_series(q, terms - 1);
  a.gf = generating_function(a.series, q.size());
  a.rate = growth_rate(a.gf);
  if (a.rate.rate > 0) a.ratio_check = ratio_estimate(a.series, 100);
  return a;
}

namespace {

nlohmann::json analysis_json(const SeriesAnalysis& a) {
  nlohmann::json j{{"states", a.states},
                   {"lumped_states", a.lumped_states},
                   {"terms", a.series.size()},
                   {"rate_exact", a.rate.exact},
                   {"rate_certified", a.rate.certified},
                   {"poles_at_minimum", a.rate.poles_at_minimum}};
  j["ratio_check"] = a.ratio_check ? nlohmann::json(*a.ratio_check) : nlohmann::json(nullptr);
  return j;
}

}  // namespace

nlohmann::json GrowthReport::to_json() const {
  nlohmann::json j;
  j["structure"] = structure;
  j["pseq_gf"] = pseq_gf.to_json();
  j["element_gf"] = element_gf.to_json();
  j["alpha"] = alpha;
  j["beta"] = beta;
  j["pseq_max_length"] = pseq_max_length ? nlohmann::json(*pseq_max_length) : nlohmann::json("infinity");
  j["unique_minimal_pole"] = unique_minimal_pole;
  j["verdict"] = to_string(verdict);
  j["diagnostics"] = {{"pseq", analysis_json(pseq)}, {"element", analysis_json(element)}};
  return j;
}

GrowthReport check_criterion(const GarsideStructure& g, const GrowthLimits& limits) {
  GrowthReport r;
  r.structure = g.label();
  r.pseq = analyze(build_pseq_matrix(g, limits), limits);
  r.element = analyze(build_element_matrix(g, limits), limits);
  r.pseq_gf = r.pseq.gf;
  r.element_gf = r.element.gf;
  r.alpha = r.pseq.rate.rate;
  r.beta = r.element.rate.rate;
  // counts of a non-negative matrix vanish from some point on iff the series is a polynomial
  if (r.pseq_gf.is_polynomial()) r.pseq_max_length = static_cast<std::size_t>(std::max(r.pseq_gf.num.degree(), 0));
  r.unique_minimal_pole = r.element.rate.unique_minimal_pole;
  if (r.pseq_max_length) r.verdict = Verdict::pd_bounded;
  else if (r.alpha < r.beta && r.unique_minimal_pole) r.verdict = Verdict::expected_pd_bounded;
  else r.verdict = Verdict::inconclusive;
  return r;
}

void write_scatter_csv(std::ostream& out, const std::vector<GrowthReport>& reports, const nlohmann::json& metadata) {
  if (!metadata.is_null()) out << "# " << metadata.dump() << '\n';
  out << "structure,alpha,beta\n";
  for (const auto& r : reports) out << r.structure << ',' << format_number(r.alpha) << ',' << format_number(r.beta) << '\n';
}

}  // namespace garside
