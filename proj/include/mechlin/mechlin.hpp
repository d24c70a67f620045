#pragma once

#include "mechlin/assessment.hpp"
#include "mechlin/companion.hpp"
#include "mechlin/determinants.hpp"
#include "mechlin/factor/block.hpp"
#include "mechlin/factor/ldlt.hpp"
#include "mechlin/factor/qr.hpp"
#include "mechlin/factor/solve.hpp"
#include "mechlin/factor/turing.hpp"
#include "mechlin/numeric/eigen.hpp"
#include "mechlin/numeric/svd.hpp"
#include "mechlin/parametric.hpp"
#include "mechlin/parser.hpp"
#include "mechlin/polyroots.hpp"
#include "mechlin/scalar/symexpr.hpp"
#include "mechlin/special.hpp"
