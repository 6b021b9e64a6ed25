#pragma once

#include "cartan/algebra.hpp"
#include "cartan/diff_check.hpp"
#include "cartan/error.hpp"
#include "cartan/monogenic.hpp"
#include "cartan/resolvent.hpp"
#include "cartan/span.hpp"
