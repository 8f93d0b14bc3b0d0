#pragma once

// Umbrella header: the full library surface.

#include "hdc/algebra.hpp"
#include "hdc/config.hpp"
#include "hdc/error.hpp"
#include "hdc/experiments.hpp"
#include "hdc/hypervector.hpp"
#include "hdc/io.hpp"
#include "hdc/item_memory.hpp"
#include "hdc/kind.hpp"
#include "hdc/langrec.hpp"
#include "hdc/placerec.hpp"
#include "hdc/reasoning.hpp"
#include "hdc/rng.hpp"
#include "hdc/similarity.hpp"
#include "hdc/spaces.hpp"
