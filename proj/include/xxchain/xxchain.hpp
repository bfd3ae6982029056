#pragma once

// Umbrella header: the whole library except the CLI layer (which drags in
// CLI11/json and is only wanted by the executable).
#include "xxchain/chain.hpp"
#include "xxchain/claims.hpp"
#include "xxchain/concurrence.hpp"
#include "xxchain/eigensolver.hpp"
#include "xxchain/errors.hpp"
#include "xxchain/matrix.hpp"
#include "xxchain/optimize.hpp"
#include "xxchain/pipeline.hpp"
#include "xxchain/scenarios.hpp"
#include "xxchain/sweep.hpp"
#include "xxchain/thermal.hpp"
