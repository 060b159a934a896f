#pragma once

#include "slag/report/io.hpp"
#include "slag/report/json.hpp"
#include "slag/report/run.hpp"
#include "slag/report/scenario.hpp"
