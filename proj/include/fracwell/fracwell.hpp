#pragma once

// Stationary states of the one-dimensional fractional nonlinear Schrodinger
// equation in an infinite potential well: quadrature discretization of the
// Riesz fractional Laplacian, normalized gradient flow, observables, and
// analytic reference values.

#include "fracwell/analytic_reference.hpp"
#include "fracwell/csv_io.hpp"
#include "fracwell/driver.hpp"
#include "fracwell/fft.hpp"
#include "fracwell/fractional_operator.hpp"
#include "fracwell/gradient_flow.hpp"
#include "fracwell/grid_config.hpp"
#include "fracwell/linear_solver.hpp"
#include "fracwell/observables.hpp"
#include "fracwell/run_record.hpp"
#include "fracwell/special.hpp"
