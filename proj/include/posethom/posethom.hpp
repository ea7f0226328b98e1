#pragma once

#include "bits.hpp"
#include "coefficients.hpp"
#include "complex_io.hpp"
#include "corpus.hpp"
#include "errors.hpp"
#include "functors.hpp"
#include "generators.hpp"
#include "homology.hpp"
#include "integer_matrix.hpp"
#include "parallel.hpp"
#include "poset_cochain.hpp"
#include "prime_field.hpp"
#include "report.hpp"
#include "simplicial_complex.hpp"
#include "smith.hpp"
#include "sparse.hpp"
#include "theories.hpp"
#include "verify.hpp"
