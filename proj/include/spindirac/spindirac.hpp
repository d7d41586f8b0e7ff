#pragma once

#include "spindirac/audit.hpp"
#include "spindirac/conformal.hpp"
#include "spindirac/degeneration.hpp"
#include "spindirac/eigensolve.hpp"
#include "spindirac/error.hpp"
#include "spindirac/exact_spectra.hpp"
#include "spindirac/lattice.hpp"
#include "spindirac/neck.hpp"
#include "spindirac/rayleigh.hpp"
#include "spindirac/spectral_diff.hpp"
#include "spindirac/warp_profile.hpp"
#include "spindirac/warped_dirac.hpp"
