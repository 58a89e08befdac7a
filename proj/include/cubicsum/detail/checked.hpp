#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>

namespace cubicsum {

using bigint = boost::multiprecision::cpp_int;

namespace detail {

template <class Int>
inline constexpr bool is_builtin_int_v =
    std::is_same_v<Int, std::int64_t> || std::is_same_v<Int, std::int32_t> ||
    std::is_same_v<Int, __int128>;

template <class Int>
concept ring_integer = is_builtin_int_v<Int> || std::is_same_v<Int, bigint>;

[[noreturn]] inline void throw_overflow(const char* what) {
  throw std::overflow_error(std::string("cubicsum: integer overflow in ") + what);
}

template <ring_integer Int>
constexpr Int add(const Int& x, const Int& y) {
  if constexpr (is_builtin_int_v<Int>) {
    Int r;
    if (__builtin_add_overflow(x, y, &r)) throw_overflow("add");
    return r;
  } else {
    return x + y;
  }
}

template <ring_integer Int>
constexpr Int sub(const Int& x, const Int& y) {
  if constexpr (is_builtin_int_v<Int>) {
    Int r;
    if (__builtin_sub_overflow(x, y, &r)) throw_overflow("sub");
    return r;
  } else {
    return x - y;
  }
}

template <ring_integer Int>
constexpr Int mul(const Int& x, const Int& y) {
  if constexpr (is_builtin_int_v<Int>) {
    Int r;
    if (__builtin_mul_overflow(x, y, &r)) throw_overflow("mul");
    return r;
  } else {
    return x * y;
  }
}

// Floor division and the matching nonnegative remainder (y > 0).
template <ring_integer Int>
constexpr Int floor_div(const Int& x, const Int& y) {
  Int q = x / y;
  if ((x % y != 0) && ((x < 0) != (y < 0))) q -= 1;
  return q;
}

template <ring_integer Int>
constexpr Int floor_mod(const Int& x, const Int& y) {
  Int r = x % y;
  if (r < 0) r += (y < 0 ? -y : y);
  return r;
}

template <ring_integer Int>
constexpr Int abs(const Int& x) {
  return x < 0 ? -x : x;
}

template <ring_integer Int>
std::int64_t to_i64(const Int& x) {
  if constexpr (is_builtin_int_v<Int>) {
    if (x > static_cast<Int>(INT64_MAX) || x < static_cast<Int>(INT64_MIN)) throw_overflow("narrowing");
    return static_cast<std::int64_t>(x);
  } else {
    if (x > INT64_MAX || x < INT64_MIN) throw_overflow("narrowing");
    return x.template convert_to<std::int64_t>();
  }
}

template <ring_integer Int>
bigint to_big(const Int& x) {
  if constexpr (std::is_same_v<Int, __int128>) {
    const bool neg = x < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x) : static_cast<unsigned __int128>(x);
    bigint r = static_cast<std::uint64_t>(u >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(u);
    return neg ? bigint(-r) : r;
  } else {
    return bigint(x);
  }
}

template <ring_integer Int>
Int from_big(const bigint& x) {
  if constexpr (std::is_same_v<Int, bigint>) {
    return x;
  } else if constexpr (std::is_same_v<Int, __int128>) {
    if (boost::multiprecision::msb(x < 0 ? bigint(-x) : x) >= 126 && x != 0) throw_overflow("narrowing");
    const bool neg = x < 0;
    bigint u = neg ? bigint(-x) : x;
    const auto hi = static_cast<std::uint64_t>(u >> 64);
    const auto lo = static_cast<std::uint64_t>(u & UINT64_MAX);
    auto r = static_cast<__int128>((static_cast<unsigned __int128>(hi) << 64) | lo);
    return neg ? -r : r;
  } else {
    if (x > std::numeric_limits<Int>::max() || x < std::numeric_limits<Int>::min()) throw_overflow("narrowing");
    return x.template convert_to<Int>();
  }
}

}  // namespace detail
}  // namespace cubicsum
