#pragma once

// Everything, for convenience. io.hpp needs the vendored JSON header on the include path.

#include "blockstruct.hpp"
#include "error.hpp"
#include "groupprops.hpp"
#include "groups.hpp"
#include "gwp.hpp"
#include "lattice.hpp"
#include "partition.hpp"
#include "perm.hpp"
#include "poset.hpp"
#include "subgroups.hpp"
