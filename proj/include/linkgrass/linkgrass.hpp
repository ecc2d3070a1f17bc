#pragma once

#include "chain.hpp"
#include "deform.hpp"
#include "dual_module.hpp"
#include "dual_series.hpp"
#include "enumerate.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "limit_series.hpp"
#include "matrix.hpp"
#include "points.hpp"
#include "poly.hpp"
#include "ramification.hpp"
#include "subspace.hpp"
#include "tameness.hpp"
