#pragma once

#include "bpchain/cache.hpp"
#include "bpchain/chain_complex.hpp"
#include "bpchain/cohomology.hpp"
#include "bpchain/homology.hpp"
#include "bpchain/kunneth.hpp"
#include "bpchain/npower.hpp"
#include "bpchain/probes.hpp"
#include "bpchain/pseries.hpp"
#include "bpchain/render.hpp"
#include "bpchain/report.hpp"
#include "bpchain/vandermonde.hpp"
