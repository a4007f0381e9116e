#include "xprim/poly/verify.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "xprim/catalog/finite_field.hpp"

namespace xprim {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Lower-bounds e on q >= T by a Puiseux polynomial without L, substitutes
// q = s^d and looks for a shift certificate. Returns the method on success.
std::optional<std::string> symbolic_positive(const QExpr& e, const BigInt& T, const Rational& lexp) {
  const unsigned long log_lo = mpz_sizeinbase(T.get_mpz_t(), 2) - 1;  // floor(log2 T)
  QExpr f;
  for (const auto& [k, c] : e.terms()) {
    if (k.second == 0) {
      f += QExpr::monomial(c, k.first);
    } else if (c < 0) {
      Rational ex = k.first + lexp * k.second;
      ex.canonicalize();
      f += QExpr::monomial(c, ex);
    } else {
      Rational m = 1;
      for (unsigned i = 0; i < k.second; ++i) m *= log_lo;
      f += QExpr::monomial(c * m, k.first);
    }
  }
  if (f.is_zero() || f.leading().second < 0) return std::nullopt;

  BigInt d = 1, cden = 1;
  for (const auto& [k, c] : f.terms()) {
    d = lcm(d, k.first.get_den());
    cden = lcm(cden, c.get_den());
  }
  std::vector<std::pair<BigInt, BigInt>> mono;  // (d * exponent, integer coefficient)
  for (const auto& [k, c] : f.terms()) {
    Rational n = k.first * d;
    n.canonicalize();
    Rational ic = c * cden;
    ic.canonicalize();
    mono.emplace_back(n.get_num(), ic.get_num());
  }
  const BigInt lo = mono.front().first;
  const BigInt span = mono.back().first - lo;
  if (span > 100000) return std::nullopt;
  std::vector<BigInt> a(span.get_ui() + 1, 0);
  for (const auto& [n, c] : mono) a[BigInt(n - lo).get_ui()] += c;

  // s0 = floor(T^(1/d)), so s >= s0 whenever q >= T.
  BigInt s0;
  mpz_root(s0.get_mpz_t(), T.get_mpz_t(), d.get_ui());
  const std::size_t n = a.size() - 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = n; j-- > i;) a[j] += s0 * a[j + 1];
  if (a[0] <= 0) return std::nullopt;
  for (const auto& c : a)
    if (c < 0) return std::nullopt;

  std::ostringstream m;
  m << "for q >= " << T;
  if (e.has_log()) m << ": L <= q^(" << to_string(lexp) << "), L >= " << log_lo;
  m << (e.has_log() ? "," : ":") << " q = s^" << d << ", coefficients of P(s + " << s0
    << ") nonnegative";
  return m.str();
}

std::optional<BigInt> exact_range(const QExpr& e, const BigInt& lo, const BigInt& hi,
                                  const PrimeRestriction& r) {
  for (const auto& q : admissible_prime_powers(lo, hi, r)) {
    auto s = sign_at(e, q);
    if (!s || *s <= 0) return q;
  }
  return std::nullopt;
}

}  // namespace

PrimeRestriction PrimeRestriction::parse(const std::string& raw) {
  std::string t;
  for (char c : raw)
    if (c != ' ' && c != '\t') t += c;
  PrimeRestriction r;
  auto number = [&](const std::string& s) -> unsigned long {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(c); }))
      throw InputError("prime restriction: bad number in '" + raw + "'");
    return std::stoul(s);
  };
  if (t.empty() || t == "none") return r;
  if (t == "podd" || t == "p>2" || t == "qodd") {
    r.kind = Kind::odd_characteristic;
    return r;
  }
  if (t.rfind("p>=", 0) == 0) {
    r.kind = Kind::min_characteristic;
    r.p = number(t.substr(3));
    return r;
  }
  if (t.rfind("p=", 0) == 0) {
    r.kind = Kind::characteristic;
    r.p = number(t.substr(2));
    if (!is_prime_u64(r.p)) throw InputError("prime restriction: not a prime in '" + raw + "'");
    return r;
  }
  if (t.rfind("q=", 0) == 0 && t.size() > 9 && t.substr(t.size() - 7) == "^(2m+1)") {
    r.kind = Kind::odd_power_of;
    r.p = number(t.substr(2, t.size() - 9));
    if (!is_prime_u64(r.p)) throw InputError("prime restriction: not a prime in '" + raw + "'");
    return r;
  }
  throw InputError("prime restriction: unrecognized '" + raw + "'");
}

bool PrimeRestriction::admits(const BigInt& q) const {
  if (q < 2 || !q.fits_ulong_p()) throw ResourceError("prime restriction: q out of range");
  auto [p, k] = prime_power(q.get_ui());
  if (p == 0) return false;
  switch (kind) {
    case Kind::none: return true;
    case Kind::characteristic: return p == this->p;
    case Kind::odd_power_of: return p == this->p && (k % 2) == 1;
    case Kind::min_characteristic: return p >= this->p;
    case Kind::odd_characteristic: return p != 2;
  }
  return false;
}

std::string PrimeRestriction::str() const {
  switch (kind) {
    case Kind::none: return "none";
    case Kind::characteristic: return "p=" + std::to_string(p);
    case Kind::odd_power_of: return "q=" + std::to_string(p) + "^(2m+1)";
    case Kind::min_characteristic: return "p>=" + std::to_string(p);
    case Kind::odd_characteristic: return "p odd";
  }
  return "none";
}

std::vector<BigInt> admissible_prime_powers(const BigInt& lo, const BigInt& hi,
                                            const PrimeRestriction& r) {
  std::vector<BigInt> out;
  if (hi <= lo || hi <= 2) return out;
  if (!hi.fits_ulong_p() || hi > (BigInt(1) << 32)) throw ResourceError("prime power range too large");
  const unsigned long h = hi.get_ui();
  std::vector<bool> composite(h, false);
  std::vector<unsigned long> qs;
  for (unsigned long p = 2; p < h; ++p) {
    if (composite[p]) continue;
    for (unsigned long m = p * p; m < h; m += p) composite[m] = true;
    for (unsigned long q = p;; q *= p) {
      if (q >= lo) qs.push_back(q);
      if (q > (h - 1) / p) break;
    }
  }
  std::sort(qs.begin(), qs.end());
  for (auto q : qs)
    if (q < h && r.admits(BigInt(q))) out.emplace_back(q);
  return out;
}

PositivityResult verify_positive(const QExpr& e, const BigInt& q0_in, const VerifyOptions& opts) {
  const BigInt q0 = q0_in < 2 ? BigInt(2) : q0_in;
  PositivityResult res;
  struct Rung {
    BigInt t;
    Rational lexp;
  };
  const Rung rungs[] = {{std::max(q0, BigInt(16)), Rational(1, 2)},
                        {std::max(q0, BigInt(65536)), Rational(1, 4)}};
  BigInt checked = q0;
  for (const auto& rung : rungs) {
    if (auto ce = exact_range(e, checked, rung.t, opts.restriction)) {
      res.kind = PositivityResult::Kind::counterexample;
      res.q = *ce;
      return res;
    }
    checked = std::max(checked, rung.t);
    if (auto m = symbolic_positive(e, rung.t, rung.lexp)) {
      res.kind = PositivityResult::Kind::proven;
      res.method = *m;
      return res;
    }
  }
  const BigInt limit = std::max(opts.fallback_limit, checked);
  if (auto ce = exact_range(e, checked, limit + 1, opts.restriction)) {
    res.kind = PositivityResult::Kind::counterexample;
    res.q = *ce;
    return res;
  }
  res.kind = PositivityResult::Kind::checked_up_to;
  res.q = limit;
  return res;
}

BoundCertificate parse_certificate_text(const std::string& text) {
  BoundCertificate c;
  bool have_claim = false, have_label = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    auto err = [&](const std::string& what) {
      return InputError("certificate line " + std::to_string(lineno) + ": " + what);
    };
    if (colon == std::string::npos) throw err("expected 'key: value'");
    std::string key = trim(line.substr(0, colon));
    std::string val = trim(line.substr(colon + 1));
    try {
      if (key == "label") {
        c.label = val;
        have_label = true;
      } else if (key == "q0") {
        if (val.empty() || !std::all_of(val.begin(), val.end(), [](char ch) { return std::isdigit(ch); }))
          throw err("q0 must be a positive integer");
        c.q0 = BigInt(val);
        if (c.q0 < 2) throw err("q0 must be at least 2");
      } else if (key == "prime_restriction") {
        c.restriction = PrimeRestriction::parse(val);
      } else if (key == "pair") {
        auto semi = val.find(';');
        if (semi == std::string::npos) throw err("pair needs 'A ; B'");
        c.pairs.emplace_back(parse_expr(trim(val.substr(0, semi))), parse_expr(trim(val.substr(semi + 1))));
      } else if (key == "claim") {
        c.claim = parse_expr(val);
        have_claim = true;
      } else if (key == "anchor") {
        c.anchor = val;
      } else if (key == "note") {
        c.notes.push_back(val);
      } else {
        throw err("unknown key '" + key + "'");
      }
    } catch (const InputError& e) {
      std::string msg = e.what();
      if (msg.rfind("certificate line", 0) == 0) throw;
      throw err(msg);
    }
  }
  if (!have_label) throw InputError("certificate: missing label");
  if (!have_claim) throw InputError("certificate: missing claim");
  if (c.pairs.empty()) throw InputError("certificate: no pairs");
  return c;
}

BoundCertificate parse_certificate_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open certificate file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_certificate_text(ss.str());
}

std::string write_certificate_text(const BoundCertificate& c) {
  std::ostringstream out;
  out << "label: " << c.label << "\n";
  out << "q0: " << c.q0 << "\n";
  out << "prime_restriction: " << c.restriction.str() << "\n";
  for (const auto& [a, b] : c.pairs) out << "pair: " << a.str() << " ; " << b.str() << "\n";
  out << "claim: " << c.claim.str() << "\n";
  if (!c.anchor.empty()) out << "anchor: " << c.anchor << "\n";
  for (const auto& n : c.notes) out << "note: " << n << "\n";
  return out.str();
}

CertificateResult verify_certificate(const BoundCertificate& c, const VerifyOptions& base_opts) {
  VerifyOptions opts = base_opts;
  opts.restriction = c.restriction;
  QExpr prod(Rational(1));
  for (std::size_t i = 0; i < c.pairs.size(); ++i) {
    const QExpr& b = c.pairs[i].second;
    auto r = verify_positive(b, c.q0, opts);
    if (r.kind != PositivityResult::Kind::proven)
      throw InputError("certificate " + c.label + ": denominator " + std::to_string(i + 1) + " (" + b.str() +
                       ") is not provably positive for q >= " + c.q0.get_str());
    prod *= b;
  }
  QExpr num = c.claim * prod;
  for (std::size_t i = 0; i < c.pairs.size(); ++i) {
    QExpr t = c.pairs[i].first * c.pairs[i].first;
    for (std::size_t j = 0; j < c.pairs.size(); ++j)
      if (j != i) t *= c.pairs[j].second;
    num -= t;
  }
  CertificateResult out;
  out.numerator = num;
  auto r = verify_positive(num, c.q0, opts);
  out.q = r.q;
  out.method = r.method;
  switch (r.kind) {
    case PositivityResult::Kind::proven: out.kind = CertificateResult::Kind::proven; break;
    case PositivityResult::Kind::checked_up_to: out.kind = CertificateResult::Kind::checked_up_to; break;
    case PositivityResult::Kind::counterexample: out.kind = CertificateResult::Kind::refuted; break;
  }
  return out;
}

Interval certificate_value(const BoundCertificate& c, const BigInt& q, unsigned bits) {
  Interval v = eval_at(c.claim, q, bits);
  for (const auto& [a, b] : c.pairs) {
    Interval ia = eval_at(a, q, bits), ib = eval_at(b, q, bits);
    if (ib.lo <= 0) throw InputError("certificate_value: denominator not positive at q = " + q.get_str());
    Interval sq;
    if (ia.lo >= 0)
      sq = {ia.lo * ia.lo, ia.hi * ia.hi};
    else if (ia.hi <= 0)
      sq = {ia.hi * ia.hi, ia.lo * ia.lo};
    else
      sq = {0, std::max(ia.lo * ia.lo, ia.hi * ia.hi)};
    v.lo -= sq.hi / ib.lo;
    v.hi -= sq.lo / ib.hi;
  }
  v.lo.canonicalize();
  v.hi.canonicalize();
  return v;
}

std::string to_string(PositivityResult::Kind k) {
  switch (k) {
    case PositivityResult::Kind::proven: return "proven";
    case PositivityResult::Kind::checked_up_to: return "checked_up_to";
    case PositivityResult::Kind::counterexample: return "counterexample";
  }
  return "?";
}

std::string to_string(CertificateResult::Kind k) {
  switch (k) {
    case CertificateResult::Kind::proven: return "proven";
    case CertificateResult::Kind::checked_up_to: return "checked_up_to";
    case CertificateResult::Kind::refuted: return "refuted";
  }
  return "?";
}

}  // namespace xprim
