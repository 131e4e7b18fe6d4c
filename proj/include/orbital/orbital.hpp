#pragma once

#include "var.hpp"
#include "transform.hpp"
#include "tuple.hpp"
#include "table.hpp"
#include "table_io.hpp"
#include "instance.hpp"
#include "check.hpp"
#include "sampling.hpp"
#include "axioms.hpp"
#include "properties.hpp"
#include "mutants.hpp"
#include "union_find.hpp"
#include "labeling.hpp"
#include "terms.hpp"
#include "representation.hpp"
#include "expr.hpp"
