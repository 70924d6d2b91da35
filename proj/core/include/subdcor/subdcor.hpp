#pragma once

#include "subdcor/benchmark.hpp"
#include "subdcor/dc_baseline.hpp"
#include "subdcor/dcor.hpp"
#include "subdcor/decision.hpp"
#include "subdcor/empirical.hpp"
#include "subdcor/error.hpp"
#include "subdcor/matrix.hpp"
#include "subdcor/realdata.hpp"
#include "subdcor/rng.hpp"
#include "subdcor/subsampling.hpp"
#include "subdcor/synth.hpp"
