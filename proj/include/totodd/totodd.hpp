#pragma once

#include <totodd/exact_linalg.hpp>
#include <totodd/exact_matrix.hpp>
#include <totodd/matrix_factory.hpp>
#include <totodd/numbers.hpp>
#include <totodd/odd_indices.hpp>
#include <totodd/period_polys.hpp>
#include <totodd/polynomials.hpp>
#include <totodd/rank_table.hpp>
#include <totodd/reports.hpp>
#include <totodd/series.hpp>
#include <totodd/suites.hpp>
