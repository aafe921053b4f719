#pragma once

// Umbrella header.

#include "effidx/entropy.hpp"
#include "effidx/error.hpp"
#include "effidx/fractal.hpp"
#include "effidx/index.hpp"
#include "effidx/ingest.hpp"
#include "effidx/pipeline.hpp"
#include "effidx/report_io.hpp"
#include "effidx/spectral.hpp"
#include "effidx/synthgen.hpp"
