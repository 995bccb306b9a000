#pragma once

#include "splitmat/canonical.hpp"
#include "splitmat/catalog.hpp"
#include "splitmat/elementset.hpp"
#include "splitmat/enumerate.hpp"
#include "splitmat/errors.hpp"
#include "splitmat/io.hpp"
#include "splitmat/matroid.hpp"
#include "splitmat/minor.hpp"
#include "splitmat/polytope.hpp"
#include "splitmat/split.hpp"
