#pragma once

#include "dseq/ot.hpp"
#include "dseq/phi.hpp"
#include "dseq/pomega.hpp"
