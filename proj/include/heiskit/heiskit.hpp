#pragma once

#include "heiskit/abelian.hpp"
#include "heiskit/bilinear.hpp"
#include "heiskit/core.hpp"
#include "heiskit/grouptable.hpp"
#include "heiskit/gspec.hpp"
#include "heiskit/heisenberg.hpp"
#include "heiskit/symplectic.hpp"
