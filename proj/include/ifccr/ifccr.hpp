#pragma once

#include "ifccr/errors.hpp"
#include "ifccr/gauss_core.hpp"
#include "ifccr/inner_bounds.hpp"
#include "ifccr/io.hpp"
#include "ifccr/outer_bounds.hpp"
#include "ifccr/ratesplit_lp.hpp"
#include "ifccr/regimes.hpp"
#include "ifccr/regions.hpp"
