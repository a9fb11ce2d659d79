#pragma once

#include "crossmat/block2.hpp"
#include "crossmat/cross_matrix.hpp"
#include "crossmat/decomp.hpp"
#include "crossmat/dense.hpp"
#include "crossmat/error.hpp"
#include "crossmat/funcs.hpp"
#include "crossmat/linalg.hpp"
#include "crossmat/scalar.hpp"
#include "crossmat/structure.hpp"
#include "crossmat/xmat.hpp"
