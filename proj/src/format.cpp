#include "carpet/format.hpp"

#include <cstdio>

namespace carpet {

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

}  // namespace carpet
