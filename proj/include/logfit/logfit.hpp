#pragma once

#include "logfit/error.hpp"
#include "logfit/rational.hpp"
#include "logfit/monomial.hpp"
#include "logfit/polynomial.hpp"
#include "logfit/expression.hpp"
#include "logfit/groebner.hpp"
#include "logfit/ideal.hpp"
#include "logfit/chart.hpp"
#include "logfit/matrix.hpp"
#include "logfit/logdiff.hpp"
#include "logfit/fitting.hpp"
#include "logfit/rank.hpp"
#include "logfit/classify.hpp"
#include "logfit/blowup.hpp"
#include "logfit/principalize.hpp"
