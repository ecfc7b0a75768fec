#pragma once

#include "advection.hpp"
#include "boltzmann.hpp"
#include "config.hpp"
#include "diagnostics.hpp"
#include "eq_limiter.hpp"
#include "experiments.hpp"
#include "fokker_planck.hpp"
#include "mesh.hpp"
#include "porous_medium.hpp"
#include "re_core.hpp"
#include "shallow_water.hpp"
