#include "nftcycles/money.hpp"

#include <array>
#include <charconv>
#include <cstdlib>

namespace nftcycles {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

std::optional<Money> parse_money(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;

  std::string_view whole = text;
  std::string_view frac;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    whole = text.substr(0, dot);
    frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 6) return std::nullopt;
    if (!all_digits(frac)) return std::nullopt;
  }
  if (!all_digits(whole)) return std::nullopt;

  std::uint64_t whole_value = 0;
  auto [ptr, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), whole_value);
  if (ec != std::errc() || ptr != whole.data() + whole.size()) return std::nullopt;

  std::uint64_t frac_micro = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    frac_micro = frac_micro * 10 + (i < frac.size() ? std::uint64_t(frac[i] - '0') : 0);
  }

  constexpr std::uint64_t kMaxMagnitude = std::uint64_t(INT64_MAX);
  if (whole_value > kMaxMagnitude / kMoneyScale) return std::nullopt;
  std::uint64_t micro = whole_value * kMoneyScale;
  if (micro > kMaxMagnitude - frac_micro) return std::nullopt;
  micro += frac_micro;

  Money value = static_cast<Money>(micro);
  return negative ? -value : value;
}

std::string format_money(Money value) {
  std::string out;
  std::uint64_t magnitude;
  if (value < 0) {
    out.push_back('-');
    magnitude = std::uint64_t(-(value + 1)) + 1;  // avoids overflow at INT64_MIN
  } else {
    magnitude = std::uint64_t(value);
  }

  out += std::to_string(magnitude / kMoneyScale);
  std::uint64_t frac = magnitude % kMoneyScale;
  if (frac != 0) {
    std::array<char, 6> digits{};
    for (int i = 5; i >= 0; --i) {
      digits[std::size_t(i)] = char('0' + frac % 10);
      frac /= 10;
    }
    std::size_t len = 6;
    while (digits[len - 1] == '0') --len;
    out.push_back('.');
    out.append(digits.data(), len);
  }
  return out;
}

}  // namespace nftcycles
