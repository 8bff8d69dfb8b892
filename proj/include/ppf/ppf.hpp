#pragma once

#include <ppf/error.hpp>
#include <ppf/expected_utility.hpp>
#include <ppf/fuzzy_number.hpp>
#include <ppf/indicators.hpp>
#include <ppf/portfolio.hpp>
#include <ppf/quadrature.hpp>
#include <ppf/random_variable.hpp>
#include <ppf/utility.hpp>
#include <ppf/weighting.hpp>
