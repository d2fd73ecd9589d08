#pragma once

// Umbrella header.

#include "ksum/core.hpp"
#include "ksum/gen.hpp"
#include "ksum/json_io.hpp"
#include "ksum/numeric.hpp"
#include "ksum/plane.hpp"
#include "ksum/reductions.hpp"
#include "ksum/rng.hpp"
#include "ksum/solvers.hpp"
#include "ksum/stats.hpp"
#include "ksum/version.hpp"
