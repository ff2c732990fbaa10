#ifndef ETCONS_ETCONS_HPP
#define ETCONS_ETCONS_HPP

#include "etcons/analysis.hpp"
#include "etcons/config.hpp"
#include "etcons/costs.hpp"
#include "etcons/engine.hpp"
#include "etcons/error.hpp"
#include "etcons/generator.hpp"
#include "etcons/graph.hpp"
#include "etcons/io.hpp"
#include "etcons/plant.hpp"
#include "etcons/runner.hpp"
#include "etcons/trigger.hpp"

#endif  // ETCONS_ETCONS_HPP
