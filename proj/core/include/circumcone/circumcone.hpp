#pragma once

#include "circumcone/admissible.hpp"
#include "circumcone/bregman.hpp"
#include "circumcone/cone_zoo.hpp"
#include "circumcone/geometry.hpp"
#include "circumcone/jacobi.hpp"
#include "circumcone/oracles.hpp"
#include "circumcone/step.hpp"
#include "circumcone/types.hpp"
