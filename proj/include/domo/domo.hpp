#pragma once

#include "baseline.hpp"
#include "dist_spec.hpp"
#include "distorted_odds.hpp"
#include "distribution.hpp"
#include "ell.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "orders.hpp"
#include "sampling.hpp"
#include "special.hpp"
#include "stability.hpp"
#include "theorems.hpp"
