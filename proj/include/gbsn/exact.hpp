#pragma once

#include "gbsn/exact/integer.hpp"
#include "gbsn/exact/lattice.hpp"
#include "gbsn/exact/matrix.hpp"
#include "gbsn/exact/normal_form.hpp"
#include "gbsn/exact/rat.hpp"
#include "gbsn/exact/rational_linalg.hpp"
