#pragma once

// Umbrella header for the supply-network model library.

#include "suppnet/evolver.hpp"
#include "suppnet/experiments.hpp"
#include "suppnet/geo.hpp"
#include "suppnet/io.hpp"
#include "suppnet/model.hpp"
#include "suppnet/motifs.hpp"
#include "suppnet/parallel.hpp"
#include "suppnet/rng.hpp"
#include "suppnet/stats.hpp"
#include "suppnet/steiner.hpp"
#include "suppnet/tables.hpp"
