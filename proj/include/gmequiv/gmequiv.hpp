#pragma once

#include "gmequiv/counterexample.hpp"
#include "gmequiv/diagnostics.hpp"
#include "gmequiv/errors.hpp"
#include "gmequiv/experiments.hpp"
#include "gmequiv/expression.hpp"
#include "gmequiv/fourier.hpp"
#include "gmequiv/io.hpp"
#include "gmequiv/kernel.hpp"
#include "gmequiv/kriging.hpp"
#include "gmequiv/parallel.hpp"
#include "gmequiv/process.hpp"
#include "gmequiv/quadrature.hpp"
#include "gmequiv/random.hpp"
#include "gmequiv/rkhs.hpp"
