#pragma once

#include "merf/analysis.hpp"
#include "merf/contraction.hpp"
#include "merf/errors.hpp"
#include "merf/grid.hpp"
#include "merf/picard.hpp"
#include "merf/shooting.hpp"
#include "merf/stefan.hpp"
