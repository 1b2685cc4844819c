#pragma once

#include "frlab/ball_quadrature.hpp"
#include "frlab/classifier.hpp"
#include "frlab/errors.hpp"
#include "frlab/experiments.hpp"
#include "frlab/exponent.hpp"
#include "frlab/operators.hpp"
#include "frlab/schur_norms.hpp"
#include "frlab/special/gamma.hpp"
#include "frlab/special/gauss_jacobi.hpp"
#include "frlab/special/hyp2f1.hpp"
#include "frlab/special_functions.hpp"
