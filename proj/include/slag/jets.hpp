#pragma once

#include "slag/jets/complex_jet.hpp"
#include "slag/jets/det.hpp"
#include "slag/jets/dump.hpp"
#include "slag/jets/elementary.hpp"
#include "slag/jets/jet.hpp"
#include "slag/jets/multi_index.hpp"
#include "slag/jets/scalar.hpp"
