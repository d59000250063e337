#pragma once

#include "mvq/classifier.hpp"
#include "mvq/coefficients.hpp"
#include "mvq/conjectures.hpp"
#include "mvq/errors.hpp"
#include "mvq/gauss.hpp"
#include "mvq/geometry.hpp"
#include "mvq/identities.hpp"
#include "mvq/quadrature.hpp"
#include "mvq/serialize.hpp"
#include "mvq/solutions.hpp"
#include "mvq/specfun.hpp"
#include "mvq/version.hpp"
