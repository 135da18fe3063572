#pragma once

#include "griffiths/canonical_construction.hpp"
#include "griffiths/error.hpp"
#include "griffiths/generating_functions.hpp"
#include "griffiths/group_model.hpp"
#include "griffiths/integral_elements.hpp"
#include "griffiths/json_io.hpp"
#include "griffiths/linalg.hpp"
#include "griffiths/matrix.hpp"
