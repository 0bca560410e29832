#pragma once

// Umbrella header: the whole library.

#include "cyclic.hpp"
#include "errors.hpp"
#include "orbifold.hpp"
#include "moves.hpp"
#include "search.hpp"
#include "extend.hpp"
#include "conjugacy.hpp"
#include "lens.hpp"
#include "oracle.hpp"
#include "io.hpp"
