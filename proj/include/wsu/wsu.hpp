#pragma once

#include "errors.hpp"
#include "element_set.hpp"
#include "group_table.hpp"
#include "constructions.hpp"
#include "isomorphism.hpp"
#include "lattice.hpp"
#include "chains.hpp"
#include "classify.hpp"
#include "residuals.hpp"
#include "io.hpp"
#include "corpus.hpp"
#include "group_expr.hpp"
#include "suites.hpp"
