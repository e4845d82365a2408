#pragma once

#include "fermicorr/fock/basis.hpp"
#include "fermicorr/fock/eigensolver.hpp"
#include "fermicorr/fock/hamiltonian.hpp"
#include "fermicorr/fock/operators.hpp"
#include "fermicorr/fock/sparse.hpp"
#include "fermicorr/fock/trial.hpp"
