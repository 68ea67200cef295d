#pragma once

// Umbrella header for the core engine. The command-line front end lives in
// dualpair/cli.hpp and additionally needs the vendored CLI11 and JSON headers.

#include "dualpair/rational.hpp"
#include "dualpair/scalar.hpp"
#include "dualpair/sparse_matrix.hpp"
#include "dualpair/graded_operator.hpp"
#include "dualpair/clifford.hpp"
#include "dualpair/weyl.hpp"
#include "dualpair/spin_module.hpp"
#include "dualpair/check_report.hpp"
#include "dualpair/parallel.hpp"
#include "dualpair/basic_checks.hpp"
#include "dualpair/osp.hpp"
#include "dualpair/relations.hpp"
#include "dualpair/racah.hpp"
#include "dualpair/dimred.hpp"
#include "dualpair/driver.hpp"
