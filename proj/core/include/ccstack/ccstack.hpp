#pragma once

#include "ccstack/central.hpp"
#include "ccstack/errors.hpp"
#include "ccstack/format.hpp"
#include "ccstack/geometry.hpp"
#include "ccstack/scan.hpp"
#include "ccstack/solver.hpp"
#include "ccstack/symmetry.hpp"
