#pragma once

// Umbrella header: the whole intrinsic-dimension / entropy estimation stack.

#include "gmst/errors.hpp"
#include "gmst/estimator.hpp"
#include "gmst/geodesics.hpp"
#include "gmst/mst.hpp"
#include "gmst/neighborhood.hpp"
#include "gmst/parallel.hpp"
#include "gmst/point_cloud.hpp"
#include "gmst/report_io.hpp"
#include "gmst/rng.hpp"
#include "gmst/synthetic.hpp"
