#pragma once

// Umbrella header: exact-rational convex geometry for coding finite metric
// spaces into the affine structure of simplex stages and decoding them back.

#include "simplexforge/affine.hpp"
#include "simplexforge/blowup.hpp"
#include "simplexforge/codec.hpp"
#include "simplexforge/cone.hpp"
#include "simplexforge/error.hpp"
#include "simplexforge/geometry.hpp"
#include "simplexforge/json_io.hpp"
#include "simplexforge/katetov.hpp"
#include "simplexforge/linalg.hpp"
#include "simplexforge/lp.hpp"
#include "simplexforge/metric_space.hpp"
#include "simplexforge/parallel.hpp"
#include "simplexforge/polytope.hpp"
#include "simplexforge/r1_family.hpp"
#include "simplexforge/rational.hpp"
#include "simplexforge/report.hpp"
#include "simplexforge/rng.hpp"
#include "simplexforge/roundtrip.hpp"
#include "simplexforge/saturation.hpp"
#include "simplexforge/scheme.hpp"
#include "simplexforge/sextension.hpp"
#include "simplexforge/testgen.hpp"
#include "simplexforge/twisted.hpp"
#include "simplexforge/verify.hpp"
