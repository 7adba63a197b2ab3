#pragma once

// Umbrella header for the faabe library: analogy-based software effort
// estimation with feature weights tuned by the firefly algorithm.

#include "faabe/errors.hpp"
#include "faabe/rng.hpp"
#include "faabe/dataset.hpp"
#include "faabe/feature_selection.hpp"
#include "faabe/abe.hpp"
#include "faabe/evaluation.hpp"
#include "faabe/firefly.hpp"
#include "faabe/experiment.hpp"
#include "faabe/report.hpp"
