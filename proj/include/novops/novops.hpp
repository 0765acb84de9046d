#pragma once

#include "novops/closure.hpp"
#include "novops/combinatorics.hpp"
#include "novops/diffpoly.hpp"
#include "novops/errors.hpp"
#include "novops/json_io.hpp"
#include "novops/linalg.hpp"
#include "novops/nov_term.hpp"
#include "novops/operad.hpp"
#include "novops/orders.hpp"
#include "novops/scalar.hpp"
#include "novops/subspace.hpp"
#include "novops/term_lang.hpp"
#include "novops/trace.hpp"
#include "novops/witness.hpp"
