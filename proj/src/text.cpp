#include "gsm/text.hpp"

#include <charconv>
#include <system_error>

namespace gsm {

namespace {

std::string to_chars_str(double value, std::chars_format fmt, int precision) {
  char buf[64];
  std::to_chars_result r =
      precision < 0 ? std::to_chars(buf, buf + sizeof(buf), value, fmt)
                    : std::to_chars(buf, buf + sizeof(buf), value, fmt, precision);
  return std::string(buf, r.ptr);
}

}  // namespace

std::string format_double(double value) {
  return to_chars_str(value, std::chars_format::general, -1);
}

std::string format_double_p12(double value) {
  return to_chars_str(value, std::chars_format::general, 12);
}

std::string format_int(long long value) {
  char buf[24];
  auto r = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, r.ptr);
}

}  // namespace gsm
