#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xprim/perm/perm_group.hpp"

namespace xprim {

/// One G-class of prime-order elements.
struct ClassRecord {
  std::string label;
  BigInt size_in_g;  // |x^G|
  BigInt size_in_h;  // |x^G ∩ H|

  /// Throws InputError unless 0 <= size_in_h <= size_in_g and size_in_g >= 1.
  void validate() const;
};

struct BaseResult {
  std::size_t base_size = 0;
  std::vector<Point> witness;
  bool exhaustive = false;
};

struct BaseTwoResult {
  std::optional<Point> witness;
  /// True when every suborbit was examined, so "no witness" means b > 2.
  bool exhaustive = false;
  std::size_t candidates_tested = 0;
};

struct BaseTwoOptions {
  /// Examine all suborbit representatives when the rank is at most this.
  std::size_t exhaustive_rank = 4096;
};

/// Looks for beta with G_{alpha,beta} = 1. Two-point stabilizer orders are
/// constant on suborbits, so each suborbit is tested once.
BaseTwoResult base_two_search(const PermGroup& g, Point alpha, std::size_t trials, RandomStream& rng,
                              const BaseTwoOptions& opts = {});

struct BaseCaps {
  std::size_t max_degree = 1000;
  std::size_t max_nodes = 50000000;
  std::size_t threads = 1;
};

/// Minimum base size by iterative deepening over orbit representatives of
/// the current pointwise stabilizer. Returns the lexicographically least
/// witness among those the search visits first. Throws ResourceError past
/// the caps and InputError for intransitive g.
BaseResult exact_base_size(const PermGroup& g, const BaseCaps& caps = {});

/// True iff the pointwise stabilizer of `pts` is trivial and no proper
/// prefix has trivial stabilizer.
bool verify_base(const PermGroup& g, const std::vector<Point>& pts);

/// Sum of h_i^2 / s_i.
Rational q_sum(const std::vector<ClassRecord>& records);

/// Sum of A_j^2 / B_j. Throws InputError for B <= 0 or A < 0.
Rational calc_aggregate(const std::vector<std::pair<Rational, Rational>>& groups);

/// Classes of prime-order elements of g with their counts inside the
/// stabilizer of alpha, by enumeration (|g| <= cap).
std::vector<ClassRecord> derive_class_records(const PermGroup& g, Point alpha, const BigInt& cap = BigInt(1000000));

/// CSV with header `label,size_in_g,size_in_h`; exact integers only.
std::vector<ClassRecord> parse_class_csv(std::string_view text);
std::vector<ClassRecord> parse_class_file(const std::filesystem::path& path);
std::string write_class_csv(const std::vector<ClassRecord>& records);

}  // namespace xprim
