#include "psim/sim/log.hpp"

#include <spdlog/spdlog.h>

#include <cstdlib>

namespace psim {

void
initLogging()
{
  auto level = spdlog::level::warn;
  if (const char* env = std::getenv("POSEIDON_SIM_LOG"); env != nullptr && *env != '\0') {
    level = spdlog::level::from_str(env);
  }
  spdlog::set_level(level);
  spdlog::set_pattern("[%l] %v");
}

} // namespace psim
