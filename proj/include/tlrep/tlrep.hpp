#pragma once

#include "braid.hpp"
#include "catalog.hpp"
#include "densec.hpp"
#include "errors.hpp"
#include "jwtower.hpp"
#include "qsu2.hpp"
#include "scanner.hpp"
#include "tlcore.hpp"

namespace tlrep {

inline constexpr const char* version = "0.1.0";

}  // namespace tlrep
