#pragma once

#include "twistlab/ci_catalog.hpp"
#include "twistlab/config.hpp"
#include "twistlab/lattice.hpp"
#include "twistlab/local_model.hpp"
#include "twistlab/monodromy.hpp"
#include "twistlab/quantum.hpp"
#include "twistlab/reports.hpp"
#include "twistlab/scalar.hpp"
#include "twistlab/weyl.hpp"
