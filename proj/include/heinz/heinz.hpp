#pragma once

#include "heinz/cli.hpp"
#include "heinz/errors.hpp"
#include "heinz/inequality_suite.hpp"
#include "heinz/interpolation_optimizer.hpp"
#include "heinz/linalg.hpp"
#include "heinz/matrix_means.hpp"
#include "heinz/quadrature.hpp"
#include "heinz/report.hpp"
#include "heinz/rng.hpp"
#include "heinz/scalar_means.hpp"
