#pragma once

#include "kummer/arith.hpp"
#include "kummer/gfq.hpp"
#include "kummer/cyclo.hpp"
#include "kummer/chars.hpp"
#include "kummer/orbits.hpp"
#include "kummer/parallel.hpp"
#include "kummer/curve.hpp"
#include "kummer/lfun.hpp"
#include "kummer/verify.hpp"
#include "kummer/io.hpp"
