#pragma once

#include "frac_heat/errors.hpp"
#include "frac_heat/special_functions.hpp"
#include "frac_heat/numerics.hpp"
#include "frac_heat/subordination.hpp"
#include "frac_heat/spectral_models.hpp"
#include "frac_heat/decay_analysis.hpp"
#include "frac_heat/pde_solver.hpp"
#include "frac_heat/report.hpp"
