#pragma once

#include "prorata/analysis.hpp"
#include "prorata/batch.hpp"
#include "prorata/dynamics.hpp"
#include "prorata/equilibrium.hpp"
#include "prorata/error.hpp"
#include "prorata/numeric.hpp"
#include "prorata/payoff.hpp"
#include "prorata/random.hpp"
#include "prorata/table.hpp"
#include "prorata/verify.hpp"
