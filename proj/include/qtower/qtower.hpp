#pragma once

#include "qtower/error.hpp"
#include "qtower/arith.hpp"
#include "qtower/qform.hpp"
#include "qtower/multiquad.hpp"
#include "qtower/units.hpp"
#include "qtower/conic.hpp"
#include "qtower/formulas.hpp"
#include "qtower/tables.hpp"
#include "qtower/classify.hpp"
#include "qtower/group2.hpp"
#include "qtower/records.hpp"
