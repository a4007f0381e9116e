#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "xprim/perm/perm_group.hpp"

namespace xprim {

/// Parses 1-based disjoint cycle notation such as "(1,2,3)(4,5)" or "()".
/// Throws InputError naming the offending character position.
Permutation parse_cycles(std::string_view text, std::size_t degree);

/// Reads the text format
///
///     permgroup degree=N
///     gen (1,2,3)(4,5)
///
/// Blank lines and text after '#' are ignored. Errors carry line numbers.
PermGroup parse_group_text(std::string_view text);
PermGroup parse_group_file(const std::filesystem::path& path);

std::string write_group_text(const PermGroup& g, std::string_view comment = {});

}  // namespace xprim
