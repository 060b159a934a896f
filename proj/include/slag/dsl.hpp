#pragma once

#include "slag/dsl/differentiate.hpp"
#include "slag/dsl/eval.hpp"
#include "slag/dsl/expr.hpp"
#include "slag/dsl/grid.hpp"
#include "slag/dsl/parser.hpp"
#include "slag/dsl/printer.hpp"
