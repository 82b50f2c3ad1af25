#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace nftcycles {

// USD amounts are integer micro-USD throughout. Sums of appreciation values
// must be exact and independent of summation order, so no floating point.
using Money = std::int64_t;

inline constexpr Money kMoneyScale = 1'000'000;

// Parses a plain decimal ("100.5", "0", "-3.25") into micro-USD.
// At most 6 fractional digits; no exponent, no leading '+', no lone ".5".
// Returns nullopt on any malformed input or int64 overflow.
std::optional<Money> parse_money(std::string_view text);

// Canonical rendering: minimal digits, trailing fractional zeros stripped,
// no decimal point when the amount is whole. parse_money(format_money(m)) == m.
std::string format_money(Money value);

}  // namespace nftcycles
