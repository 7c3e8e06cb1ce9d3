#pragma once

#include "jig/algebra.hpp"
#include "jig/channels.hpp"
#include "jig/core.hpp"
#include "jig/functional.hpp"
#include "jig/metric.hpp"
#include "jig/models.hpp"
#include "jig/oracles.hpp"
#include "jig/random.hpp"
#include "jig/suites.hpp"
