#pragma once

#include "udw/model.hpp"
#include "udw/special_functions.hpp"
#include "udw/wightman.hpp"
#include "udw/rates.hpp"
#include "udw/quadrature.hpp"
#include "udw/oracle.hpp"
#include "udw/observables.hpp"
#include "udw/sweep.hpp"
#include "udw/evaluate.hpp"
