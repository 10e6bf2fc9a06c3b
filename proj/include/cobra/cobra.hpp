#pragma once

#include "cobra/biased.hpp"
#include "cobra/csv.hpp"
#include "cobra/enumerate.hpp"
#include "cobra/error.hpp"
#include "cobra/experiments.hpp"
#include "cobra/generators.hpp"
#include "cobra/graph.hpp"
#include "cobra/grid_tracker.hpp"
#include "cobra/harness.hpp"
#include "cobra/io.hpp"
#include "cobra/linalg.hpp"
#include "cobra/metrics.hpp"
#include "cobra/oracle.hpp"
#include "cobra/parallel.hpp"
#include "cobra/rng.hpp"
#include "cobra/stats.hpp"
#include "cobra/walks.hpp"
#include "cobra/walt.hpp"
