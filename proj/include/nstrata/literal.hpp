#pragma once

// Text forms of polygons and cocharacters.
//
//   polygon     := run ("," run)*
//   run         := rational ("^" count)?
//   rational    := "-"? digits ("/" digits)?
//   cocharacter := "min:" n ":" d  |  integer run list, e.g. "2,2,1,1" or "1^4,0^4"

#include <cctype>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nstrata/polygon.hpp"

namespace nstrata {

class LiteralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace literal_detail {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  std::size_t pos() const { return pos_; }
  void skip_space() {
    while (!done() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw LiteralError("column " + std::to_string(pos_ + 1) + ": " + what + " in \"" + std::string(text_) + "\"");
  }

  std::int64_t integer(bool allow_sign) {
    skip_space();
    std::size_t start = pos_;
    if (allow_sign && peek() == '-') ++pos_;
    std::size_t digits = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("expected a number");
    }
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc()) {
      pos_ = start;
      fail("number out of range");
    }
    return value;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

struct RawRun {
  Rational slope;
  std::int64_t length;
  std::string text;
};

inline std::vector<RawRun> parse_runs(std::string_view text, bool integral) {
  Cursor cur(text);
  std::vector<RawRun> runs;
  cur.skip_space();
  if (cur.done()) cur.fail("empty literal");
  do {
    cur.skip_space();
    std::size_t start = cur.pos();
    std::int64_t num = cur.integer(true);
    std::int64_t den = 1;
    if (cur.accept('/')) {
      if (integral) cur.fail("expected an integer entry");
      den = cur.integer(false);
      if (den == 0) cur.fail("zero denominator");
    }
    std::int64_t length = 1;
    if (cur.accept('^')) {
      length = cur.integer(false);
      if (length < 1) cur.fail("run length must be positive");
    }
    runs.push_back({Rational(num, den), length, std::string(text.substr(start, cur.pos() - start))});
    cur.skip_space();
  } while (cur.accept(','));
  cur.skip_space();
  if (!cur.done()) cur.fail(std::string("unexpected '") + cur.peek() + "'");
  return runs;
}

}  // namespace literal_detail

/// Parses "s1^m1,s2^m2,..." into a canonical concave polygon.
inline ConcavePolygon parse_polygon(std::string_view text) {
  auto raw = literal_detail::parse_runs(text, false);
  std::vector<Run> runs;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (i > 0 && raw[i].slope > raw[i - 1].slope)
      throw LiteralError("run " + std::to_string(i + 1) + " (" + raw[i].text + ") breaks concavity: slope " +
                         raw[i].slope.to_string() + " exceeds preceding slope " + raw[i - 1].slope.to_string());
    runs.push_back({raw[i].slope, raw[i].length});
  }
  // Lattice condition on merged runs.
  std::size_t first = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const bool last_of_group = i + 1 == raw.size() || raw[i + 1].slope != raw[i].slope;
    if (!last_of_group) continue;
    std::int64_t total = 0;
    for (std::size_t j = first; j <= i; ++j) total += raw[j].length;
    if (total % raw[i].slope.den() != 0)
      throw LiteralError("run " + std::to_string(i + 1) + " (" + raw[i].text + ") violates lattice breakpoints: length " +
                         std::to_string(total) + " not divisible by " + std::to_string(raw[i].slope.den()));
    first = i + 1;
  }
  return ConcavePolygon::from_runs(std::move(runs));
}

inline std::string render_polygon(const ConcavePolygon& p) { return p.to_string(); }

/// "min:n:d" or a non-increasing integer run list.
inline DominantCocharacter parse_cocharacter(std::string_view text) {
  if (text.starts_with("min:")) {
    literal_detail::Cursor cur(text.substr(4));
    std::int64_t n = cur.integer(false);
    if (!cur.accept(':')) cur.fail("expected ':' in min:<n>:<d>");
    std::int64_t d = cur.integer(true);
    cur.skip_space();
    if (!cur.done()) cur.fail("trailing characters");
    try {
      return MinusculeCocharacter(n, d).dominant();
    } catch (const PolygonError& e) {
      throw LiteralError(std::string("cocharacter ") + std::string(text) + ": " + e.what());
    }
  }
  std::vector<std::int64_t> entries;
  for (const auto& run : literal_detail::parse_runs(text, true))
    for (std::int64_t i = 0; i < run.length; ++i) entries.push_back(run.slope.num());
  try {
    return DominantCocharacter(std::move(entries));
  } catch (const PolygonError& e) {
    throw LiteralError(std::string("cocharacter ") + std::string(text) + ": " + e.what());
  }
}

inline std::string render_cocharacter(const DominantCocharacter& mu) {
  std::vector<Run> runs;
  for (auto e : mu.entries()) runs.push_back({Rational(e), 1});
  return ConcavePolygon::from_runs(std::move(runs)).to_string();
}

}  // namespace nstrata
