#pragma once

#include "adhmkit/angles_sigma.hpp"
#include "adhmkit/errors.hpp"
#include "adhmkit/geometry_bridge.hpp"
#include "adhmkit/hirz_adhm.hpp"
#include "adhmkit/json_io.hpp"
#include "adhmkit/matrix_kernel.hpp"
#include "adhmkit/plane_adhm.hpp"
#include "adhmkit/random.hpp"
#include "adhmkit/report.hpp"
