#pragma once

#include "septensor/als.hpp"
#include "septensor/ctd.hpp"
#include "septensor/errors.hpp"
#include "septensor/matrix_id.hpp"
#include "septensor/pivoted_qr.hpp"
#include "septensor/q_factorization.hpp"
#include "septensor/rng.hpp"
#include "septensor/sep_operator.hpp"
#include "septensor/serialize.hpp"
#include "septensor/sgti.hpp"
#include "septensor/singular_values.hpp"
#include "septensor/snorm.hpp"
#include "septensor/sym_id.hpp"
#include "septensor/tensor_id.hpp"
#include "septensor/types.hpp"
