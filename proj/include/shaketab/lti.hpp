#pragma once

#include "shaketab/lti/butterworth.hpp"
#include "shaketab/lti/lyapunov.hpp"
#include "shaketab/lti/pole_placement.hpp"
#include "shaketab/lti/polynomial.hpp"
#include "shaketab/lti/rk4.hpp"
#include "shaketab/lti/state_space.hpp"
#include "shaketab/lti/table_models.hpp"
#include "shaketab/lti/transfer_function.hpp"
