#pragma once

#include <string>

namespace carpet {

/// Text form used in every CSV and JSON record: 12 significant digits.
std::string format_real(double value);

}  // namespace carpet
