#ifndef PROLATE_NUMKIT_HPP
#define PROLATE_NUMKIT_HPP

#include "prolate/numkit/elliptic.hpp"
#include "prolate/numkit/ode.hpp"
#include "prolate/numkit/quadrature.hpp"
#include "prolate/numkit/roots.hpp"
#include "prolate/numkit/tolerances.hpp"

#endif
