#pragma once

#include "hgm/arith.hpp"
#include "hgm/lattice.hpp"
#include "hgm/base_field.hpp"
#include "hgm/extension.hpp"
#include "hgm/radical.hpp"
#include "hgm/integral.hpp"
#include "hgm/dedekind.hpp"
#include "hgm/hopf.hpp"
#include "hgm/freeness.hpp"
#include "hgm/report.hpp"
