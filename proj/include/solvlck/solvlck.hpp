#pragma once

#include "solvlck/cohomology.hpp"
#include "solvlck/errors.hpp"
#include "solvlck/exterior.hpp"
#include "solvlck/io.hpp"
#include "solvlck/lck.hpp"
#include "solvlck/lie_algebra.hpp"
#include "solvlck/linalg.hpp"
#include "solvlck/number_field.hpp"
#include "solvlck/ot_structure.hpp"
#include "solvlck/scalar.hpp"
