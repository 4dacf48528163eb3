#pragma once

// Umbrella header for the 1-D Vlasov-Poisson particle method library.

#include "vp1d/config.hpp"
#include "vp1d/diagnostics.hpp"
#include "vp1d/grid.hpp"
#include "vp1d/io.hpp"
#include "vp1d/particle_set.hpp"
#include "vp1d/particles.hpp"
#include "vp1d/scenario.hpp"
#include "vp1d/simulation.hpp"
#include "vp1d/validity.hpp"
