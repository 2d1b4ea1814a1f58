#pragma once

// Umbrella header: generalized entropic separability criteria for
// finite-dimensional quantum states.

#include "entrosep/criteria.hpp"
#include "entrosep/entropy.hpp"
#include "entrosep/errors.hpp"
#include "entrosep/matrix.hpp"
#include "entrosep/oracles.hpp"
#include "entrosep/scan.hpp"
#include "entrosep/state_io.hpp"
#include "entrosep/states.hpp"
#include "entrosep/tolerances.hpp"
