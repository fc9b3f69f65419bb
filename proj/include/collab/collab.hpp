#pragma once

#include "collab/actuation.hpp"
#include "collab/aggregation.hpp"
#include "collab/errors.hpp"
#include "collab/harness.hpp"
#include "collab/metrics.hpp"
#include "collab/netsim.hpp"
#include "collab/perception.hpp"
#include "collab/rng.hpp"
#include "collab/scenario.hpp"
#include "collab/scenario_io.hpp"
#include "collab/session.hpp"
#include "collab/simulation.hpp"
#include "collab/trace.hpp"
#include "collab/trust.hpp"
#include "collab/types.hpp"
