#pragma once

// Umbrella header.

#include "polyform/analysis.hpp"
#include "polyform/atiyah.hpp"
#include "polyform/energies.hpp"
#include "polyform/errors.hpp"
#include "polyform/generators.hpp"
#include "polyform/geometry.hpp"
#include "polyform/hull.hpp"
#include "polyform/io.hpp"
#include "polyform/optimize.hpp"
#include "polyform/shells.hpp"
#include "polyform/signature.hpp"
#include "polyform/symmetry.hpp"
#include "polyform/tammes.hpp"
