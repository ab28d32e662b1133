#pragma once

// Umbrella header.

#include "cyclotomic.hpp"
#include "linalg.hpp"
#include "qpoly.hpp"
#include "wgroup.hpp"
#include "dunkl.hpp"
#include "doubles.hpp"
#include "cherednik.hpp"
#include "io.hpp"
#include "checks.hpp"
