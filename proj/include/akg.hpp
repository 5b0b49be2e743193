#pragma once

#include "akg/errors.hpp"
#include "akg/lattice.hpp"
#include "akg/cone.hpp"
#include "akg/divisors.hpp"
#include "akg/special_rings.hpp"
#include "akg/bounds.hpp"
#include "akg/oracle.hpp"
#include "akg/selfcheck.hpp"
