#pragma once

#include "gbsn/abel.hpp"
#include "gbsn/actions.hpp"
#include "gbsn/bass_serre.hpp"
#include "gbsn/error.hpp"
#include "gbsn/exact.hpp"
#include "gbsn/gog.hpp"
#include "gbsn/json_io.hpp"
#include "gbsn/modular.hpp"
#include "gbsn/random.hpp"
#include "gbsn/subgroup.hpp"
#include "gbsn/word_syntax.hpp"
