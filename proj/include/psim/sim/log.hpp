#ifndef PSIM_SIM_LOG_HPP
#define PSIM_SIM_LOG_HPP

namespace psim {

/// Sets the spdlog level from POSEIDON_SIM_LOG (trace, debug, info, warn,
/// error, critical, off). Defaults to warn.
void
initLogging();

} // namespace psim

#endif // PSIM_SIM_LOG_HPP
