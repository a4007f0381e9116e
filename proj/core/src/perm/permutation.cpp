#include "xprim/perm/permutation.hpp"

#include <numeric>
#include <sstream>

namespace xprim {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point v : images_) {
    if (v >= images_.size() || seen[v])
      throw InputError("permutation images are not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      Point a = c[i];
      if (a >= degree) throw InputError("cycle point out of range");
      if (used[a]) throw InputError("cycles are not disjoint");
      used[a] = true;
      img[a] = c[(i + 1) % c.size()];
    }
  }
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<Point>(i);
  return r;
}

Point Permutation::first_moved() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return static_cast<Point>(i);
  return static_cast<Point>(images_.size());
}

BigInt Permutation::order() const {
  BigInt result = 1;
  for (const auto& c : cycles()) {
    BigInt len = static_cast<unsigned long>(c.size());
    mpz_lcm(result.get_mpz_t(), result.get_mpz_t(), len.get_mpz_t());
  }
  return result;
}

std::vector<std::vector<Point>> Permutation::cycles() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(images_.size(), false);
  for (Point i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    std::vector<Point> c;
    for (Point j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      c.push_back(j);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string Permutation::to_cycle_string() const {
  auto cs = cycles();
  if (cs.empty()) return "()";
  std::ostringstream os;
  for (const auto& c : cs) {
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i] + 1;
    os << ')';
  }
  return os.str();
}

std::size_t Permutation::hash() const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (Point v : images_) {
    h ^= v;
    h *= 0x100000001b3ull;
  }
  return h;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation r;
  compose_into(r, p, q);
  return r;
}

void compose_into(Permutation& out, const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw DegreeMismatch("compose: degree mismatch");
  const std::size_t n = p.degree();
  if (&out == &p || &out == &q) {
    Permutation tmp;
    compose_into(tmp, p, q);
    out = std::move(tmp);
    return;
  }
  out.images_.resize(n);
  const Point* pi = p.images_.data();
  const Point* qi = q.images_.data();
  Point* oi = out.images_.data();
  for (std::size_t i = 0; i < n; ++i) oi[i] = qi[pi[i]];
}

Permutation conjugate(const Permutation& g, const Permutation& x) {
  return compose(compose(x.inverse(), g), x);
}

Permutation power(const Permutation& p, long long e) {
  Permutation base = e < 0 ? p.inverse() : p;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  Permutation result(p.degree());
  while (k) {
    if (k & 1) result = compose(result, base);
    base = compose(base, base);
    k >>= 1;
  }
  return result;
}

}  // namespace xprim
