#pragma once

#include "qsym/upgrades.hpp"

namespace qsym {

struct DecoupleResult {
    Symmetry stacked;         // input symmetry with the midpoint ancillas
    Circuit gamma;            // disentangling FDQC on the stacked chain
    Symmetry decoupled;       // verified block form: per-midpoint gates W_j(g)
    std::vector<int> grid_sites;
    std::vector<int> midpoints;
    double chi_deviation = 0;          // worst |chi_j(g,h) - 1|
    bool used_conjugate_copies = false;
    double block_residual = 0;         // gamma^-1 alpha gamma vs the block form
    double midpoint_residual = 0;      // W_j acting only on the midpoint ancilla
};

// Disentangler: measure the block unitaries of alpha_{>=jL} (alpha_{>=(j+1)L})^-1
// on a grid of pitch L anchored at j0, stack regular-representation ancillas
// at block midpoints, and conjugate by V_j = sum_h U_j(h) (x) |h><h| to obtain
// a block-partitioned symmetry acting on the midpoint ancillas alone.
DecoupleResult decouple(const Symmetry& s, int L, int j0, const EngineOptions& opt = {});

}  // namespace qsym
