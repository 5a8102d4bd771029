#pragma once

#include "vec3.hpp"
#include "geometry.hpp"
#include "central.hpp"
#include "dziobek.hpp"
#include "family.hpp"
#include "solver.hpp"
#include "dynamics.hpp"
#include "io.hpp"
