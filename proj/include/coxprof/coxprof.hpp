#pragma once

#include "coxprof/graph.hpp"
#include "coxprof/canonical.hpp"
#include "coxprof/types.hpp"
#include "coxprof/classification.hpp"
#include "coxprof/gram.hpp"
#include "coxprof/io.hpp"
#include "coxprof/topology.hpp"
#include "coxprof/invariants.hpp"
#include "coxprof/rigidity.hpp"
#include "coxprof/enumeration.hpp"
#include "coxprof/serialize.hpp"
