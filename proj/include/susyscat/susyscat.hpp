#pragma once

#include "susyscat/errors.hpp"
#include "susyscat/model.hpp"
#include "susyscat/scatter_core.hpp"
#include "susyscat/smatrix.hpp"
#include "susyscat/ode_oracle.hpp"
#include "susyscat/identities.hpp"
#include "susyscat/resonance.hpp"
#include "susyscat/commands.hpp"
