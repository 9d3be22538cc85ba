#pragma once

#include "freedyn/boundary.hpp"
#include "freedyn/dynamics.hpp"
#include "freedyn/error.hpp"
#include "freedyn/graph.hpp"
#include "freedyn/graphmap.hpp"
#include "freedyn/io.hpp"
#include "freedyn/random.hpp"
#include "freedyn/stallings.hpp"
#include "freedyn/word.hpp"
