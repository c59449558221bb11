// Umbrella header.
#pragma once

#include "slg/complex.hpp"
#include "slg/errors.hpp"
#include "slg/precision.hpp"
#include "slg/quadrature.hpp"
#include "slg/report.hpp"
#include "slg/sector.hpp"
#include "slg/special_functions.hpp"
#include "slg/stirling.hpp"
#include "slg/terminant.hpp"
