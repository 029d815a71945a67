#pragma once

// Umbrella header.

#include "beliefbench/analyze.hpp"
#include "beliefbench/cli.hpp"
#include "beliefbench/config.hpp"
#include "beliefbench/core.hpp"
#include "beliefbench/corpus.hpp"
#include "beliefbench/gitlog.hpp"
#include "beliefbench/labeler.hpp"
#include "beliefbench/metrics.hpp"
#include "beliefbench/report.hpp"
#include "beliefbench/stats.hpp"
#include "beliefbench/synth.hpp"
