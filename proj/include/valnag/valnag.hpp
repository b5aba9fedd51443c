#pragma once

#include "valnag/cli.hpp"
#include "valnag/invariants.hpp"
#include "valnag/lattice.hpp"
#include "valnag/linalg.hpp"
#include "valnag/model.hpp"
#include "valnag/nok.hpp"
#include "valnag/proximity.hpp"
#include "valnag/rational.hpp"
#include "valnag/report.hpp"
#include "valnag/scene.hpp"
#include "valnag/seshadri.hpp"
#include "valnag/surd.hpp"
#include "valnag/svg.hpp"
#include "valnag/zariski.hpp"
