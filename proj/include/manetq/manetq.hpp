#pragma once

#include "manetq/asymptotics.hpp"
#include "manetq/bounds.hpp"
#include "manetq/errors.hpp"
#include "manetq/exact.hpp"
#include "manetq/metric.hpp"
#include "manetq/monte_carlo.hpp"
#include "manetq/params.hpp"
#include "manetq/rational.hpp"
#include "manetq/rng.hpp"
#include "manetq/solvers.hpp"
#include "manetq/varying.hpp"
