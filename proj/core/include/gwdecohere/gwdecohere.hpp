#pragma once

#include "gwdecohere/critical_radius.hpp"
#include "gwdecohere/errors.hpp"
#include "gwdecohere/model.hpp"
#include "gwdecohere/oracle.hpp"
#include "gwdecohere/quadrature.hpp"
#include "gwdecohere/rng.hpp"
#include "gwdecohere/root_find.hpp"
#include "gwdecohere/spectral.hpp"
#include "gwdecohere/variance.hpp"
