#pragma once

#include "slag/hodge/basis.hpp"
#include "slag/hodge/gram.hpp"
#include "slag/hodge/phi.hpp"
#include "slag/hodge/quadrature.hpp"
