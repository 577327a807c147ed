#pragma once

// Umbrella header: permutation groups, fusion systems, mod-p cohomology of
// fusion systems via stable elements, and the scenario runner.

#include "fusys/perm.hpp"
#include "fusys/group.hpp"
#include "fusys/hom.hpp"
#include "fusys/fusion.hpp"
#include "fusys/control.hpp"
#include "fusys/gf.hpp"
#include "fusys/bar.hpp"
#include "fusys/cohomology.hpp"
#include "fusys/catalog.hpp"
#include "fusys/scenario.hpp"
