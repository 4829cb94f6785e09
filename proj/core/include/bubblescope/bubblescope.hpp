#pragma once

// Convenience header pulling in the whole library.

#include "bubblescope/bubbles.hpp"
#include "bubblescope/caps.hpp"
#include "bubblescope/constructions.hpp"
#include "bubblescope/discrete_map.hpp"
#include "bubblescope/domain.hpp"
#include "bubblescope/energy.hpp"
#include "bubblescope/error.hpp"
#include "bubblescope/extension.hpp"
#include "bubblescope/freegrp.hpp"
#include "bubblescope/hopf.hpp"
#include "bubblescope/hyperbolic.hpp"
#include "bubblescope/io.hpp"
#include "bubblescope/mercator.hpp"
#include "bubblescope/pair_quadrature.hpp"
#include "bubblescope/parallel.hpp"
#include "bubblescope/random.hpp"
#include "bubblescope/sampler.hpp"
#include "bubblescope/scaling.hpp"
#include "bubblescope/target.hpp"
#include "bubblescope/topo.hpp"
#include "bubblescope/vec.hpp"
