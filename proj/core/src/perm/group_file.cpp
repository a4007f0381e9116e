#include "xprim/perm/group_file.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace xprim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail_at(std::size_t pos, const std::string& what) {
  throw InputError("cycle syntax error at column " + std::to_string(pos + 1) + ": " + what);
}

}  // namespace

Permutation parse_cycles(std::string_view text, std::size_t degree) {
  std::vector<std::vector<Point>> cycles;
  std::vector<bool> seen(degree, false);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i == text.size()) fail_at(i, "empty permutation");
  while (true) {
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != '(') fail_at(i, "expected '('");
    ++i;
    std::vector<Point> cyc;
    skip_ws();
    if (i < text.size() && text[i] == ')') {
      ++i;
      continue;
    }
    while (true) {
      skip_ws();
      std::size_t start = i;
      unsigned long v = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
      if (ec != std::errc() || ptr == text.data() + i) fail_at(start, "expected a point number");
      i = static_cast<std::size_t>(ptr - text.data());
      if (v < 1 || v > degree) fail_at(start, "point " + std::to_string(v) + " outside 1.." + std::to_string(degree));
      Point p = static_cast<Point>(v - 1);
      if (seen[p]) fail_at(start, "point " + std::to_string(v) + " repeated");
      seen[p] = true;
      cyc.push_back(p);
      skip_ws();
      if (i == text.size()) fail_at(i, "unterminated cycle");
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (text[i] == ')') {
        ++i;
        break;
      }
      fail_at(i, "expected ',' or ')'");
    }
    cycles.push_back(std::move(cyc));
  }
  return Permutation::from_cycles(degree, cycles);
}

PermGroup parse_group_text(std::string_view text) {
  std::size_t degree = 0;
  bool have_header = false;
  std::vector<Permutation> gens;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto where = [&] { return "line " + std::to_string(lineno) + ": "; };
    if (!have_header) {
      constexpr std::string_view kHead = "permgroup degree=";
      if (line.substr(0, kHead.size()) != kHead) throw InputError(where() + "expected 'permgroup degree=N'");
      auto num = trim(line.substr(kHead.size()));
      auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), degree);
      if (ec != std::errc() || ptr != num.data() + num.size() || degree == 0)
        throw InputError(where() + "bad degree");
      have_header = true;
      continue;
    }
    if (line.substr(0, 3) != "gen" || (line.size() > 3 && !std::isspace(static_cast<unsigned char>(line[3]))))
      throw InputError(where() + "expected 'gen <cycles>'");
    try {
      gens.push_back(parse_cycles(line.substr(3), degree));
    } catch (const InputError& e) {
      throw InputError(where() + e.what());
    }
  }
  if (!have_header) throw InputError("missing 'permgroup degree=N' header");
  return PermGroup(degree, std::move(gens));
}

PermGroup parse_group_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open group file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_group_text(buf.str());
  } catch (const DegreeMismatch&) {
    throw;
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string write_group_text(const PermGroup& g, std::string_view comment) {
  std::ostringstream out;
  if (!comment.empty()) {
    std::istringstream lines{std::string(comment)};
    for (std::string l; std::getline(lines, l);) out << "# " << l << '\n';
  }
  out << "permgroup degree=" << g.degree() << '\n';
  for (const auto& s : g.generators()) out << "gen " << s.to_cycle_string() << '\n';
  return out.str();
}

}  // namespace xprim
