#pragma once

#include "barred/counting.hpp"
#include "barred/enumerate.hpp"
#include "barred/formulas.hpp"
#include "barred/matcher.hpp"
#include "barred/oeis.hpp"
#include "barred/pattern.hpp"
#include "barred/permutation.hpp"
