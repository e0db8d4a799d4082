#pragma once

#include "modext/budget.hpp"
#include "modext/errors.hpp"
#include "modext/forge.hpp"
#include "modext/fourier.hpp"
#include "modext/linalg.hpp"
#include "modext/mds.hpp"
#include "modext/modcode.hpp"
