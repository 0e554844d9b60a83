#pragma once

#include <array>

namespace outbreak {

using Vec2 = std::array<double, 2>;

}  // namespace outbreak
