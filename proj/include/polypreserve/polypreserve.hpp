#pragma once

#include "polypreserve/atomic_measure.hpp"
#include "polypreserve/certificates.hpp"
#include "polypreserve/const_series.hpp"
#include "polypreserve/eventual.hpp"
#include "polypreserve/levy.hpp"
#include "polypreserve/linalg.hpp"
#include "polypreserve/moment_checks.hpp"
#include "polypreserve/multi_index.hpp"
#include "polypreserve/operator_series.hpp"
#include "polypreserve/polynomial.hpp"
#include "polypreserve/preserver.hpp"
#include "polypreserve/prony.hpp"
#include "polypreserve/rational.hpp"
#include "polypreserve/roots.hpp"
#include "polypreserve/semigroup.hpp"
#include "polypreserve/sequences.hpp"
