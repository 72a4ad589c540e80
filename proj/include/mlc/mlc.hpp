#pragma once

#include "mlc/calculus_il.hpp"
#include "mlc/calculus_s.hpp"
#include "mlc/central.hpp"
#include "mlc/derivation.hpp"
#include "mlc/links.hpp"
#include "mlc/random.hpp"
#include "mlc/syntax.hpp"
#include "mlc/terms.hpp"
