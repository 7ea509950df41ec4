#pragma once

// Convenience include for the whole library.

#include "lama/config.hpp"
#include "lama/datasets.hpp"
#include "lama/experiment.hpp"
#include "lama/grid.hpp"
#include "lama/io.hpp"
#include "lama/matrix.hpp"
#include "lama/metrics.hpp"
#include "lama/model.hpp"
#include "lama/pca.hpp"
#include "lama/presets.hpp"
#include "lama/rng.hpp"
#include "lama/schedules.hpp"
#include "lama/svg.hpp"
#include "lama/trainer.hpp"
#include "lama/viz.hpp"
