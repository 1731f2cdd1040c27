#pragma once

// Umbrella header for the exact library (no oracle, no I/O).

#include "polytrop/arith.hpp"
#include "polytrop/cone.hpp"
#include "polytrop/delta_complex.hpp"
#include "polytrop/errors.hpp"
#include "polytrop/fan.hpp"
#include "polytrop/galaxy.hpp"
#include "polytrop/lattice.hpp"
#include "polytrop/limit_toric.hpp"
#include "polytrop/stratified_map.hpp"
#include "polytrop/symbolic.hpp"
#include "polytrop/tropical.hpp"
