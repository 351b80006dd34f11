#pragma once

#include "crepant/criteria.hpp"
#include "crepant/fraction.hpp"
#include "crepant/hj.hpp"
#include "crepant/lattice.hpp"
#include "crepant/numeric.hpp"
#include "crepant/polynomial.hpp"
#include "crepant/scan.hpp"
