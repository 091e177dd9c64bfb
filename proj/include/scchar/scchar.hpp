#pragma once

// Umbrella header.

#include "scchar/abelian.hpp"
#include "scchar/characters.hpp"
#include "scchar/errors.hpp"
#include "scchar/exact.hpp"
#include "scchar/filtration.hpp"
#include "scchar/padic.hpp"
#include "scchar/rootdata.hpp"
#include "scchar/tori.hpp"
