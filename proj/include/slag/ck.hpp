#pragma once

#include "slag/ck/dump.hpp"
#include "slag/ck/equations.hpp"
#include "slag/ck/residuals.hpp"
#include "slag/ck/solver.hpp"
#include "slag/ck/structure.hpp"
