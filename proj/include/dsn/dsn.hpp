#pragma once

// Umbrella header for the diversity/similarity/network index library.

#include "dsn/correlation.hpp"
#include "dsn/diversity.hpp"
#include "dsn/errors.hpp"
#include "dsn/estimation.hpp"
#include "dsn/io.hpp"
#include "dsn/layout.hpp"
#include "dsn/matrix.hpp"
#include "dsn/similarity.hpp"
#include "dsn/study.hpp"
#include "dsn/svg.hpp"
#include "dsn/tolerances.hpp"
#include "dsn/types.hpp"
