#pragma once

#include "lnmgf/errors.hpp"
#include "lnmgf/estimate.hpp"
#include "lnmgf/gaussian.hpp"
#include "lnmgf/laplace.hpp"
#include "lnmgf/methods.hpp"
#include "lnmgf/monte_carlo.hpp"
#include "lnmgf/stats.hpp"
#include "lnmgf/summation.hpp"
#include "lnmgf/tables.hpp"
#include "lnmgf/thin_tile.hpp"
#include "lnmgf/zero_entropy.hpp"
