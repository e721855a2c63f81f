#pragma once

#include "miop/errors.hpp"
#include "miop/scalar.hpp"
#include "miop/poly.hpp"
#include "miop/laurent.hpp"
#include "miop/determinant.hpp"
#include "miop/families.hpp"
#include "miop/xpicture.hpp"
#include "miop/parallel.hpp"
#include "miop/rtable.hpp"
#include "miop/multiindex.hpp"
#include "miop/verify.hpp"
#include "miop/quad.hpp"
#include "miop/serialize.hpp"
