// Umbrella header for the majorization toolkit.
#pragma once

#include "majkit/discretize.hpp"
#include "majkit/functionals.hpp"
#include "majkit/json_io.hpp"
#include "majkit/kernels.hpp"
#include "majkit/lp.hpp"
#include "majkit/majorize.hpp"
#include "majkit/measure.hpp"
#include "majkit/numeric.hpp"
#include "majkit/random.hpp"
#include "majkit/rational.hpp"
