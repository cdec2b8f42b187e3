#pragma once

#include "relrep/algebra.hpp"
#include "relrep/algfile.hpp"
#include "relrep/chain.hpp"
#include "relrep/cnf.hpp"
#include "relrep/errors.hpp"
#include "relrep/model.hpp"
#include "relrep/qorder.hpp"
#include "relrep/rational.hpp"
#include "relrep/relation.hpp"
#include "relrep/representation.hpp"
#include "relrep/search.hpp"
