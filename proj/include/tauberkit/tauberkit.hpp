#pragma once

#include "tauberkit/errors.hpp"
#include "tauberkit/extrapolation.hpp"
#include "tauberkit/io.hpp"
#include "tauberkit/measures.hpp"
#include "tauberkit/parallel.hpp"
#include "tauberkit/quadrature.hpp"
#include "tauberkit/renewal.hpp"
#include "tauberkit/tauber.hpp"
#include "tauberkit/trace.hpp"
#include "tauberkit/transforms.hpp"
