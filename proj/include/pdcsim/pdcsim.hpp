#pragma once

// Post-disaster coverage simulator: umbrella header.

#include "pdcsim/association.hpp"
#include "pdcsim/channel.hpp"
#include "pdcsim/config.hpp"
#include "pdcsim/errors.hpp"
#include "pdcsim/fading.hpp"
#include "pdcsim/geometry.hpp"
#include "pdcsim/montecarlo.hpp"
#include "pdcsim/random.hpp"
#include "pdcsim/records.hpp"
#include "pdcsim/scenario.hpp"
#include "pdcsim/sinr.hpp"
#include "pdcsim/sweep.hpp"

namespace pdcsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pdcsim
