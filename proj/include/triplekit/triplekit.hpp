#pragma once

#include "triplekit/canonicalize.hpp"
#include "triplekit/errors.hpp"
#include "triplekit/jordan.hpp"
#include "triplekit/json_io.hpp"
#include "triplekit/matrix.hpp"
#include "triplekit/prooflab.hpp"
#include "triplekit/rng.hpp"
#include "triplekit/scalar.hpp"
#include "triplekit/supermap.hpp"
#include "triplekit/triple_check.hpp"
#include "triplekit/version.hpp"
