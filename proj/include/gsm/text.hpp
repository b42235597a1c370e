#pragma once

#include <string>

namespace gsm {

// Shortest decimal form that round-trips to the same double. Used wherever a
// printed rate must parse back exactly.
std::string format_double(double value);

// Fixed 12-significant-digit general form. Used for trace output, where byte
// stability matters and grid times like 3*0.1 should read "0.3".
std::string format_double_p12(double value);

std::string format_int(long long value);

}  // namespace gsm
