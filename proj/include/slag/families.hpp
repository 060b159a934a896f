#pragma once

#include "slag/families/check.hpp"
#include "slag/families/constructors.hpp"
#include "slag/families/family.hpp"
#include "slag/families/policy.hpp"
