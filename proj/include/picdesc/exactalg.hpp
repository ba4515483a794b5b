#pragma once

#include "picdesc/errors.hpp"
#include "picdesc/exactalg/complex.hpp"
#include "picdesc/exactalg/group.hpp"
#include "picdesc/exactalg/matrix.hpp"
#include "picdesc/exactalg/modp.hpp"
#include "picdesc/exactalg/smith.hpp"
#include "picdesc/exactalg/sparse.hpp"
