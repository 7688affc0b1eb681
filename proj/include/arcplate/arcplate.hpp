#pragma once

#include "arcplate/analysis.hpp"
#include "arcplate/casimir.hpp"
#include "arcplate/constants.hpp"
#include "arcplate/elasticity.hpp"
#include "arcplate/error.hpp"
#include "arcplate/geometry.hpp"
#include "arcplate/io.hpp"
#include "arcplate/numerics.hpp"
