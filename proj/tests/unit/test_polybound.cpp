#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "xprim/poly/lie_data.hpp"
#include "xprim/poly/verify.hpp"

using namespace xprim;

namespace {

QExpr q_(long e) { return QExpr::monomial(1, e); }

// Independent floating-point evaluation, for cross-checking intervals.
long double approx(const QExpr& e, double q) {
  long double s = 0, lq = std::log2(static_cast<long double>(q));
  for (const auto& [k, c] : e.terms())
    s += static_cast<long double>(c.get_d()) * std::pow(static_cast<long double>(q), k.first.get_d()) *
         std::pow(lq, static_cast<long double>(k.second));
  return s;
}

QExpr random_expr(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(0, 4), num(-9, 9), den(1, 4), lg(0, 2);
  QExpr e;
  for (int i = nterms(rng); i > 0; --i)
    e += QExpr::monomial(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), static_cast<unsigned>(lg(rng)));
  return e;
}

std::vector<BigInt> random_prime_powers(const BigInt& q0, std::size_t n, std::uint64_t seed,
                                        const PrimeRestriction& r = {}) {
  auto pool = admissible_prime_powers(q0, BigInt(1) << 16, r);
  std::mt19937_64 rng(seed);
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < n && !pool.empty(); ++i) out.push_back(pool[rng() % pool.size()]);
  return out;
}

const std::filesystem::path kCerts = std::filesystem::path(XPRIM_DATA_DIR) / "certs";

}  // namespace

TEST_CASE("parse expands products and powers") {
  QExpr a = parse_expr("(q^4+1)*(q^12-1)");
  QExpr want = q_(16) - q_(4) + q_(12) - QExpr(1);
  CHECK(a == want);
  CHECK(a.terms().size() == 4);

  QExpr b = parse_expr("120*(q+1)^8");
  CHECK(b.terms().size() == 9);
  CHECK(b.leading().first == QExpr::Key{Rational(8), 0});
  CHECK(b.leading().second == 120);
  // binomial coefficient C(8,4) * 120
  CHECK(b.terms().at({Rational(4), 0}) == 70 * 120);

  QExpr c = parse_expr("q^(133/2)");
  CHECK(c.is_monomial());
  CHECK(c.leading().first.first == Rational(133, 2));

  CHECK(parse_expr("1/2*q^3") == QExpr::monomial(Rational(1, 2), 3));
  CHECK(parse_expr("q^(-1)") == QExpr::monomial(1, -1));
  CHECK(parse_expr("q^(-1/2)") == QExpr::monomial(1, Rational(-1, 2)));
  CHECK(parse_expr("(q-1)/q") == QExpr(1) - q_(-1));
  CHECK(parse_expr("2*L*q^14") == QExpr::monomial(2, 14, 1));
  CHECK(parse_expr("-q + q") .is_zero());
  CHECK(parse_expr("(2*q^3)^(-2)") == QExpr::monomial(Rational(1, 4), -6));
}

TEST_CASE("parse errors carry a position") {
  for (const char* bad : {"q^", "(q+1", "q+*2", "q/(q+1)", "(q+1)^(1/2)", "x", "q 2", "q^(1/0)", ""}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_expr(bad), InputError);
  }
  try {
    parse_expr("q + $");
    FAIL("no throw");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("position 5") != std::string::npos);
  }
}

TEST_CASE("printing round-trips and arithmetic laws hold") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    QExpr a = random_expr(rng), b = random_expr(rng), c = random_expr(rng);
    CAPTURE(a.str());
    CHECK(parse_expr(a.str()) == a);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a - a == QExpr());
    CHECK(a.pow(3) == a * a * a);
    for (const auto& [k, coef] : a.terms()) CHECK(coef != 0);
  }
}

TEST_CASE("interval evaluation") {
  CHECK(eval_at(parse_expr("q^2-1"), BigInt(3)).lo == 8);
  CHECK(eval_at(parse_expr("q^2-1"), BigInt(3)).exact());
  Interval l8 = eval_at(QExpr::L(), BigInt(8), Rational(1, 1000000));
  CHECK(l8.lo <= 3);
  CHECK(l8.hi >= 3);
  CHECK(l8.width() <= Rational(1, 1000000));
  Interval r = eval_at(parse_expr("q^(1/2)"), BigInt(4));
  CHECK(r.exact());
  CHECK(r.lo == 2);
  CHECK(eval_at(parse_expr("q^(-3)"), BigInt(2)).lo == Rational(1, 8));

  // brackets the true value and shrinks under refinement
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    QExpr e = random_expr(rng);
    long q = 2 + static_cast<long>(rng() % 500);
    Interval v = eval_at(e, BigInt(q), Rational(1, BigInt(1) << 40));
    long double a = approx(e, static_cast<double>(q));
    long double tol = 1e-12L * (1 + std::fabs(a));
    CHECK(v.lo.get_d() <= a + tol);
    CHECK(v.hi.get_d() >= a - tol);
    CHECK(v.width() <= Rational(1, BigInt(1) << 40));
  }

  for (long q : {3L, 5L, 6L, 7L, 1000L, 1000003L}) {
    Interval lg = log2_interval(BigInt(q), 100);
    CHECK(lg.lo.get_d() <= std::log2(static_cast<double>(q)) + 1e-12);
    CHECK(lg.hi.get_d() >= std::log2(static_cast<double>(q)) - 1e-12);
    CHECK(lg.width() <= Rational(1, BigInt(1) << 90));
  }
  CHECK(log2_interval(BigInt(1024), 64).exact());
}

TEST_CASE("verify_positive examples") {
  auto r1 = verify_positive(parse_expr("(q^4+1)*(q^12-1) - q^16"), BigInt(2));
  CHECK(r1.kind == PositivityResult::Kind::proven);
  auto r2 = verify_positive(parse_expr("q - 2"), BigInt(2));
  CHECK(r2.kind == PositivityResult::Kind::counterexample);
  CHECK(r2.q == 2);
  auto r3 = verify_positive(parse_expr("q^3 - q^(5/2)"), BigInt(2));
  CHECK(r3.kind == PositivityResult::Kind::proven);
  // least failing prime power is reported
  auto r4 = verify_positive(parse_expr("q - 10"), BigInt(2));
  CHECK(r4.kind == PositivityResult::Kind::counterexample);
  CHECK(r4.q == 2);
  auto r5 = verify_positive(parse_expr("q - 10"), BigInt(11));
  CHECK(r5.kind == PositivityResult::Kind::proven);
  // restriction skips inadmissible q: 9 is excluded under p=2
  VerifyOptions p2;
  p2.restriction = PrimeRestriction::parse("p=2");
  CHECK(verify_positive(parse_expr("(q-9)^2"), BigInt(2), p2).kind == PositivityResult::Kind::proven);
  CHECK(verify_positive(parse_expr("(q-9)^2"), BigInt(2)).kind == PositivityResult::Kind::counterexample);
  // log terms
  CHECK(verify_positive(parse_expr("q - 3*L"), BigInt(16)).kind == PositivityResult::Kind::proven);
  auto r6 = verify_positive(parse_expr("q - 3*L"), BigInt(2));
  CHECK(r6.kind == PositivityResult::Kind::counterexample);
  CHECK(r6.q == 2);
  // L <= q^(1/2) cancels the leading term; the q^(1/4) majorant is needed
  VerifyOptions quick;
  quick.fallback_limit = 1 << 12;
  auto r7 = verify_positive(parse_expr("q^(1/2) - L"), BigInt(17), quick);
  CHECK(r7.kind == PositivityResult::Kind::proven);
  CHECK(r7.method.find("q^(1/4)") != std::string::npos);
  // zero is a failure
  CHECK(verify_positive(QExpr(), BigInt(2)).kind == PositivityResult::Kind::counterexample);
  CHECK(verify_positive(parse_expr("q^2 - q^2"), BigInt(2)).kind == PositivityResult::Kind::counterexample);
}

TEST_CASE("verify_positive checked_up_to when the majorants are too weak") {
  // Positive for all real q >= 2 (minimum near L = 12.2 is about 0.83),
  // but q^(1/8) is dominated by both L majorants.
  QExpr e = parse_expr("q^(1/8) - 1/4*L + 1");
  VerifyOptions o;
  o.fallback_limit = 1 << 12;
  auto r = verify_positive(e, BigInt(2), o);
  CHECK(r.kind == PositivityResult::Kind::checked_up_to);
  // exact checks already reached the second rung threshold
  CHECK(r.q == 65536);
  // a polynomial that dips between prime powers is still proven above 16
  CHECK(verify_positive(parse_expr("(2*q-13)^2"), BigInt(2)).kind == PositivityResult::Kind::proven);
  CHECK(verify_positive(parse_expr("q^(1/8) - 1/4*L"), BigInt(2), o).kind ==
        PositivityResult::Kind::counterexample);
}

TEST_CASE("verify_positive spot audit") {
  std::mt19937_64 rng(2024);
  int proven = 0;
  for (int i = 0; i < 60; ++i) {
    QExpr e = random_expr(rng) + QExpr::monomial(Rational(1 + rng() % 5), Rational(static_cast<long>(rng() % 12) + 1, 1));
    VerifyOptions o;
    o.fallback_limit = 256;
    auto r = verify_positive(e, BigInt(2), o);
    if (r.kind != PositivityResult::Kind::proven) continue;
    ++proven;
    for (const auto& q : random_prime_powers(BigInt(2), 20, rng())) {
      CAPTURE(e.str());
      CAPTURE(q.get_str());
      CHECK(eval_at(e, q, 256).lo > 0);
    }
  }
  CHECK(proven > 10);
}

TEST_CASE("class bound table") {
  CHECK(class_bound_table(LieFamily::F4, 1) == q_(16));
  BoundParams b1{1, 3, 3}, b2{2, 3, 3};
  CHECK(class_bound_table(LieFamily::E7, 5, b1) == parse_expr("q^(133/2)"));
  CHECK(class_bound_table(LieFamily::E7, 5, b2) == parse_expr("1/2*q^(133/2)"));
  CHECK_THROWS_AS(class_bound_table(LieFamily::B2_twisted, 2), InputError);
  CHECK_THROWS_AS(class_bound_table(LieFamily::B2_twisted, 3), InputError);
  CHECK_THROWS_AS(class_bound_table(LieFamily::F4_twisted, 3), InputError);
  CHECK_THROWS_AS(class_bound_table(LieFamily::E8, 6), InputError);
  CHECK(class_bound_table(LieFamily::E8, 4) == parse_expr("(q-1)*q^113"));
  CHECK(class_bound_table(LieFamily::F4_twisted, 5) == parse_expr("q^(52/3)"));
  CHECK(class_bound_table(LieFamily::G2_twisted, 5) == parse_expr("q^(14/3)"));
  CHECK(class_bound_table(LieFamily::B2_twisted, 5) == parse_expr("q^(10/3)"));
  CHECK(class_bound_table(LieFamily::B2_twisted, 4) == parse_expr("1/2*q^4"));
  CHECK(class_bound_table(LieFamily::G2_twisted, 2) == parse_expr("1/2*(q-1)*q^4"));
  CHECK(class_bound_table(LieFamily::E6, 5) == parse_expr("1/3*(q-1)*q^25"));
  CHECK(class_bound_table(LieFamily::E6_twisted, 5) == parse_expr("1/3*q^26"));
  CHECK(class_bound_table(LieFamily::E6_twisted, 1) == parse_expr("(q-1)*q^21"));
  // every present entry is positive from the row's least q
  for (auto f : kAllLieFamilies)
    for (int i = 1; i <= 5; ++i) {
      QExpr e;
      try {
        e = class_bound_table(f, i);
      } catch (const InputError&) {
        continue;
      }
      CAPTURE(to_string(f));
      CAPTURE(i);
      CHECK(verify_positive(e, BigInt(class_bound_min_q(f))).kind == PositivityResult::Kind::proven);
    }
  CHECK(parse_lie_family("3D4") == LieFamily::D4_triality);
  CHECK_THROWS_AS(parse_lie_family("H4"), InputError);
}

TEST_CASE("F4 class sizes exceed the table bounds") {
  auto proven = [](const char* formula, const QExpr& bound, long q0, const char* restriction) {
    VerifyOptions o;
    o.restriction = PrimeRestriction::parse(restriction);
    CAPTURE(formula);
    auto r = verify_positive(parse_expr(formula) - bound, BigInt(q0), o);
    CHECK(r.kind == PositivityResult::Kind::proven);
  };
  proven("(q^4+1)*(q^12-1)", class_bound_table(LieFamily::F4, 1), 3, "p odd");
  proven("1/2*q^3*(q^3+1)*(q^4+1)*(q^12-1)", class_bound_table(LieFamily::F4, 2), 3, "p odd");
  proven("1/2*q^3*(q^3-1)*(q^4+1)*(q^12-1)", class_bound_table(LieFamily::F4, 2), 3, "p odd");
  proven("q^8*(q^8+q^4+1)", class_bound_table(LieFamily::F4, 3), 3, "p odd");
  proven("q^15*(q^4+1)*(q-1)*(q^10+q^8+q^6+q^4+q^2+1)", class_bound_table(LieFamily::F4, 4), 3, "p odd");
  proven("q^12*(q+1)*(q^3+1)*(q^4+1)*(q^6+1)", class_bound_table(LieFamily::F4, 5), 3, "p odd");

  // The fourth formula is |F4(q)| / (|SO7(q)| (q+1)); cross-check at q = 3, 5.
  auto order = [](const BigInt& q, std::initializer_list<int> degs, int n) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n));
    for (int d : degs) {
      BigInt t;
      mpz_pow_ui(t.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d));
      r *= t - 1;
    }
    return r;
  };
  for (long qq : {3L, 5L}) {
    BigInt q(qq);
    BigInt f4 = order(q, {2, 6, 8, 12}, 24), so7 = order(q, {2, 4, 6}, 9);
    Interval v = eval_at(parse_expr("q^15*(q^4+1)*(q-1)*(q^10+q^8+q^6+q^4+q^2+1)"), q);
    CHECK(v.exact());
    CHECK(v.lo == Rational(f4 / (so7 * (q + 1))));
  }
}

TEST_CASE("involution and unipotent counts") {
  CHECK(i_r_bound(LieFamily::G2, 2) == parse_expr("2*(q+1)*q^7"));
  CHECK(unipotent_count(LieFamily::G2) == q_(12));
  CHECK(unipotent_count(LieFamily::B2_twisted) == q_(4));
  CHECK(unipotent_count(LieFamily::E8) == q_(240));
  CHECK(i_r_bound(LieFamily::E8, 2) == parse_expr("2*(q+1)*q^127"));
  CHECK(i_r_bound(LieFamily::E8, 3) == parse_expr("2*(q+1)*q^167"));
  CHECK(i_r_bound(LieFamily::B2_twisted, 3) == parse_expr("2*(q+1)*q^(8/3)"));
  CHECK(i_r_bound(LieFamily::F4_twisted, 2) == parse_expr("2*(q+1)*q^13"));
  CHECK_THROWS_AS(i_r_bound(LieFamily::G2, 5), InputError);
  // unipotent count equals the p-part of |G2(q)|, q^6, squared
  CHECK(unipotent_count(LieFamily::G2) == q_(6).pow(2));
}

TEST_CASE("certificates") {
  auto e8 = parse_certificate_file(kCerts / "e8_torus_normalizer.cert");
  CHECK(e8.pairs.size() == 2);
  // 696729600 = |W(E8)| = 2 * |O8+(2)| = 2 * 348364800
  CHECK(e8.pairs[1].first == parse_expr("(q+1)^8*L") * QExpr(Rational(2 * 348364800L)));
  auto r = verify_certificate(e8);
  CHECK(r.kind == CertificateResult::Kind::proven);

  auto g2 = parse_certificate_file(kCerts / "g2_l2.cert");
  CHECK(verify_certificate(g2).kind == CertificateResult::Kind::proven);
  // The plain values at q = 7, with log_7 7 = 1.
  Rational plain = Rational(56 * 56, 117306) + Rational(336 * 336, 943936);
  CHECK(plain.get_d() < 1 / std::sqrt(7.0));
  // With log_p q replaced by L itself, q = 7 is a counterexample.
  BoundCertificate literal = g2;
  literal.pairs[1].first = parse_expr("q*(q^2-1)*L");
  auto lr = verify_certificate(literal);
  CHECK(lr.kind == CertificateResult::Kind::refuted);
  CHECK(lr.q == 7);
  CHECK(certificate_value(literal, BigInt(7)).hi < 0);
  CHECK(certificate_value(g2, BigInt(7)).lo > 0);

  auto triv = parse_certificate_file(kCerts / "trivial.cert");
  CHECK(verify_certificate(triv).kind == CertificateResult::Kind::proven);

  // round trip through text
  auto again = parse_certificate_text(write_certificate_text(g2));
  CHECK(again.pairs == g2.pairs);
  CHECK(again.claim == g2.claim);
  CHECK(again.q0 == g2.q0);
  CHECK(again.restriction.str() == g2.restriction.str());
}

TEST_CASE("shipped certificates decay in q") {
  for (const auto& entry : std::filesystem::directory_iterator(kCerts)) {
    auto c = parse_certificate_file(entry.path());
    CAPTURE(c.label);
    if (c.label == "trivial") continue;
    auto v = verify_certificate(c);
    CHECK(v.kind == CertificateResult::Kind::proven);
    BoundCertificate sum = c;
    sum.claim = QExpr();
    // -(sum A^2/B) at q0 versus 4 q0
    Interval at0 = certificate_value(sum, c.q0), at4 = certificate_value(sum, 4 * c.q0);
    CHECK(-at0.hi > -at4.lo);
  }
}

TEST_CASE("malformed certificates") {
  CHECK_THROWS_AS(parse_certificate_text("label: x\nclaim: 1\n"), InputError);
  CHECK_THROWS_AS(parse_certificate_text("label: x\npair: q\nclaim: 1\n"), InputError);
  CHECK_THROWS_AS(parse_certificate_text("label: x\npair: q ; q\nclaim: 1\nfoo: 2\n"), InputError);
  CHECK_THROWS_AS(parse_certificate_text("label: x\nq0: 1\npair: q ; q\nclaim: 1\n"), InputError);
  CHECK_THROWS_AS(PrimeRestriction::parse("p=4"), InputError);
  auto bad = parse_certificate_text("label: x\npair: 1 ; q - 5\nclaim: 1\n");
  CHECK_THROWS_AS(verify_certificate(bad), InputError);
}

TEST_CASE("prime restrictions") {
  auto r = PrimeRestriction::parse("q=2^(2m+1)");
  CHECK(r.admits(BigInt(8)));
  CHECK(r.admits(BigInt(32)));
  CHECK_FALSE(r.admits(BigInt(16)));
  CHECK_FALSE(r.admits(BigInt(27)));
  auto odd = PrimeRestriction::parse("p odd");
  CHECK(odd.admits(BigInt(9)));
  CHECK_FALSE(odd.admits(BigInt(8)));
  CHECK_FALSE(odd.admits(BigInt(6)));
  auto ge = PrimeRestriction::parse("p>=7");
  CHECK(ge.admits(BigInt(49)));
  CHECK_FALSE(ge.admits(BigInt(25)));
  auto pp = admissible_prime_powers(BigInt(2), BigInt(16), {});
  std::vector<BigInt> want{2, 3, 4, 5, 7, 8, 9, 11, 13};
  CHECK(pp == want);
}
