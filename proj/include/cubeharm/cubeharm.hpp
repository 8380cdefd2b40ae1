#pragma once

#include "cubeharm/rational.hpp"
#include "cubeharm/unipoly.hpp"
#include "cubeharm/series.hpp"
#include "cubeharm/multipoly.hpp"
#include "cubeharm/rational_matrix.hpp"
#include "cubeharm/combinatorics.hpp"
#include "cubeharm/bernoulli.hpp"
#include "cubeharm/invariants.hpp"
#include "cubeharm/coefficients.hpp"
#include "cubeharm/generating.hpp"
#include "cubeharm/harmonics.hpp"
