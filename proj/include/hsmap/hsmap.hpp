#pragma once

#include "hsmap/error.hpp"
#include "hsmap/maps.hpp"
#include "hsmap/polynomial.hpp"
#include "hsmap/quadrature.hpp"
#include "hsmap/render.hpp"
#include "hsmap/scenario.hpp"
#include "hsmap/shear.hpp"
#include "hsmap/verify.hpp"
