#ifndef FLAGCERT_FLAGCERT_HPP
#define FLAGCERT_FLAGCERT_HPP

#include "bounds.hpp"
#include "certificates.hpp"
#include "cochain.hpp"
#include "fixtures.hpp"
#include "flag.hpp"
#include "graph.hpp"
#include "interval.hpp"
#include "parallel.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "realalg.hpp"
#include "report.hpp"
#include "search.hpp"
#include "selftest.hpp"

#endif
