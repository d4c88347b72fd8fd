#pragma once

// Umbrella header.

#include "dtori/bulge_family.hpp"
#include "dtori/cylinder.hpp"
#include "dtori/cylinder_family.hpp"
#include "dtori/darboux.hpp"
#include "dtori/diffgeo.hpp"
#include "dtori/errors.hpp"
#include "dtori/meshio.hpp"
#include "dtori/quaternion.hpp"
#include "dtori/surface.hpp"
#include "dtori/torus.hpp"
