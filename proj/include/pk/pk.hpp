#pragma once

// Umbrella header: exact k-regular partition counting, Jensen/Hermite
// polynomials, hyperbolicity deciders, asymptotic estimates, and the
// survey machinery built on top of them.

#include "pk/asymptotics.hpp"
#include "pk/bigfloat.hpp"
#include "pk/hyperbolicity.hpp"
#include "pk/jensen.hpp"
#include "pk/partitions.hpp"
#include "pk/polynomial.hpp"
#include "pk/rational.hpp"
#include "pk/serialize.hpp"
#include "pk/survey.hpp"
#include "pk/version.hpp"
