#include "xprim/poly/lie_data.hpp"

namespace xprim {

namespace {

struct Entry {
  bool present;
  Rational coeff;
  int alpha_power;  // factor (1 - q^-1)^alpha_power
  int divisor;      // 0 none, 1 beta, 2 gamma, 3 delta
  Rational exponent;
};

constexpr int kNone = 0, kBeta = 1, kGamma = 2, kDelta = 3;

Entry e(Rational c, int a, Rational ex, int div = kNone) { return {true, c, a, div, ex}; }
Entry absent() { return {false, 0, 0, kNone, 0}; }

Entry table_entry(LieFamily f, int i) {
  const Rational h(1, 2);
  switch (f) {
    case LieFamily::E8: {
      const Entry row[] = {e(1, 0, 58), e(1, 0, 92), e(1, 0, 112), e(1, 1, 114), e(1, 0, 124)};
      return row[i - 1];
    }
    case LieFamily::E7: {
      const Entry row[] = {e(1, 0, 34), e(1, 0, 52), e(h, 1, 54), e(1, 1, 54), e(1, 0, Rational(133, 2), kBeta)};
      return row[i - 1];
    }
    case LieFamily::E6: {
      const Entry row[] = {e(1, 0, 22), e(1, 0, 32), e(1, 0, 32), e(1, 0, 32), e(1, 1, 26, kGamma)};
      return row[i - 1];
    }
    case LieFamily::E6_twisted: {
      const Entry row[] = {e(1, 1, 22), e(1, 1, 32), e(1, 1, 32), e(1, 1, 32), e(1, 0, 26, kDelta)};
      return row[i - 1];
    }
    case LieFamily::F4: {
      const Entry row[] = {e(1, 0, 16), e(h, 1, 22), e(1, 0, 16), e(1, 1, 30), e(1, 0, 26)};
      return row[i - 1];
    }
    case LieFamily::G2: {
      const Entry row[] = {e(1, 1, 6), e(1, 1, 8), e(1, 0, 8), e(1, 1, 6), e(1, 0, 7)};
      return row[i - 1];
    }
    case LieFamily::D4_triality: {
      const Entry row[] = {e(1, 1, 10), e(1, 0, 16), e(1, 0, 16), e(1, 1, 18), e(1, 0, 14)};
      return row[i - 1];
    }
    case LieFamily::F4_twisted: {
      const Entry row[] = {e(1, 1, 11), e(1, 1, 14), absent(), e(1, 1, 18), e(1, 0, Rational(52, 3))};
      return row[i - 1];
    }
    case LieFamily::G2_twisted: {
      const Entry row[] = {e(1, 1, 4), e(h, 1, 5), e(1, 1, 4), e(h, 0, 6), e(1, 0, Rational(14, 3))};
      return row[i - 1];
    }
    case LieFamily::B2_twisted: {
      const Entry row[] = {e(1, 1, 3), absent(), absent(), e(h, 0, 4), e(1, 0, Rational(10, 3))};
      return row[i - 1];
    }
  }
  throw InputError("unknown family");
}

}  // namespace

std::string to_string(LieFamily f) {
  switch (f) {
    case LieFamily::E8: return "E8";
    case LieFamily::E7: return "E7";
    case LieFamily::E6: return "E6";
    case LieFamily::E6_twisted: return "2E6";
    case LieFamily::F4: return "F4";
    case LieFamily::G2: return "G2";
    case LieFamily::D4_triality: return "3D4";
    case LieFamily::F4_twisted: return "2F4";
    case LieFamily::G2_twisted: return "2G2";
    case LieFamily::B2_twisted: return "2B2";
  }
  return "?";
}

LieFamily parse_lie_family(std::string_view name) {
  for (auto f : kAllLieFamilies)
    if (to_string(f) == name) return f;
  throw InputError("unknown Lie family '" + std::string(name) + "'");
}

QExpr class_bound_table(LieFamily f, int index, const BoundParams& params) {
  if (index < 1 || index > 5) throw InputError("class bound index must be 1..5");
  Entry en = table_entry(f, index);
  if (!en.present)
    throw InputError("class bound table: no entry " + std::to_string(index) + " for " + to_string(f));
  Rational c = en.coeff;
  int div = en.divisor == kBeta ? params.beta : en.divisor == kGamma ? params.gamma : en.divisor == kDelta ? params.delta : 1;
  if (div <= 0) throw InputError("class bound table: gcd parameter must be positive");
  c /= div;
  c.canonicalize();
  QExpr alpha = QExpr(Rational(1)) - QExpr::monomial(1, -1);
  return QExpr::monomial(c, en.exponent) * alpha.pow(static_cast<unsigned>(en.alpha_power));
}

int class_bound_min_q(LieFamily f) {
  switch (f) {
    case LieFamily::F4_twisted: return 8;
    case LieFamily::G2_twisted: return 27;
    case LieFamily::B2_twisted: return 8;
    default: return 2;
  }
}

LieData lie_data(LieFamily f) {
  switch (f) {
    case LieFamily::E8: return {248, 120, 1};
    case LieFamily::E7: return {133, 63, 1};
    case LieFamily::E6:
    case LieFamily::E6_twisted: return {78, 36, 1};
    case LieFamily::F4: return {52, 24, 1};
    case LieFamily::G2: return {14, 6, 1};
    case LieFamily::D4_triality: return {28, 12, 1};
    case LieFamily::F4_twisted: return {52, 24, 2};
    case LieFamily::G2_twisted: return {14, 6, 2};
    case LieFamily::B2_twisted: return {10, 4, 2};
  }
  throw InputError("unknown family");
}

QExpr i_r_bound(LieFamily f, int r) {
  LieData d = lie_data(f);
  Rational n;
  if (r == 2)
    n = Rational(d.dimension - d.positive_roots, d.alpha);
  else if (r == 3)
    n = (Rational(d.dimension) - Rational(2 * d.positive_roots, 3)) / d.alpha;
  else
    throw InputError("i_r_bound: r must be 2 or 3");
  n.canonicalize();
  Rational ex = n - 1;
  ex.canonicalize();
  return QExpr(Rational(2)) * (QExpr::q() + QExpr(Rational(1))) * QExpr::monomial(1, ex);
}

QExpr unipotent_count(LieFamily f) {
  LieData d = lie_data(f);
  Rational ex(2 * d.positive_roots, d.alpha);
  ex.canonicalize();
  return QExpr::monomial(1, ex);
}

}  // namespace xprim
