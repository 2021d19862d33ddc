#pragma once

#include <laplace/errors.hpp>
#include <laplace/rational.hpp>
#include <laplace/multi_index.hpp>
#include <laplace/padic.hpp>
#include <laplace/pochhammer.hpp>
#include <laplace/matrix.hpp>
#include <laplace/gamma_ring.hpp>
#include <laplace/log_series.hpp>
#include <laplace/matrix_series.hpp>
#include <laplace/standard_laplace.hpp>
#include <laplace/formal_laplace.hpp>
#include <laplace/weyl.hpp>
#include <laplace/duality.hpp>
#include <laplace/numeric_fit.hpp>
#include <laplace/padic_estimates.hpp>
#include <laplace/gevrey.hpp>
#include <laplace/parallel.hpp>
#include <laplace/suites.hpp>
#include <laplace/json_io.hpp>
