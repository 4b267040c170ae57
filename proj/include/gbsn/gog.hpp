#pragma once

#include "gbsn/gog/catalog.hpp"
#include "gbsn/gog/graph.hpp"
#include "gbsn/gog/presentation.hpp"
#include "gbsn/gog/word.hpp"
