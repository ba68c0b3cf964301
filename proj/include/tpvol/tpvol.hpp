#pragma once

// Umbrella header.

#include "tpvol/asymptotics.hpp"
#include "tpvol/bigint.hpp"
#include "tpvol/count_cache.hpp"
#include "tpvol/counting.hpp"
#include "tpvol/ehrhart.hpp"
#include "tpvol/log_real.hpp"
#include "tpvol/margins.hpp"
#include "tpvol/scaled_volume.hpp"
#include "tpvol/table1.hpp"
