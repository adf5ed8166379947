#ifndef SPECPOLY_SPECPOLY_HPP
#define SPECPOLY_SPECPOLY_HPP

// Umbrella header: spectrum-adapted polynomial approximation of f(A)b for
// sparse symmetric matrices, with Chebyshev and Lanczos baselines and a
// dense desk-scale oracle.

#include "specpoly/approximant.hpp"
#include "specpoly/cdf.hpp"
#include "specpoly/chebyshev.hpp"
#include "specpoly/common.hpp"
#include "specpoly/eig.hpp"
#include "specpoly/experiment.hpp"
#include "specpoly/graph.hpp"
#include "specpoly/interval.hpp"
#include "specpoly/lanczos.hpp"
#include "specpoly/matrix_market.hpp"
#include "specpoly/newton.hpp"
#include "specpoly/ortho.hpp"
#include "specpoly/sparse.hpp"

#endif
