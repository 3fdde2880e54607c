#pragma once

#include "catgate/error.hpp"
#include "catgate/gate.hpp"
#include "catgate/metrics.hpp"
#include "catgate/numerics.hpp"
#include "catgate/phase_map.hpp"
#include "catgate/states.hpp"
#include "catgate/wigner.hpp"
