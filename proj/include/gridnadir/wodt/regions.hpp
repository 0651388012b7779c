#pragma once

#include <vector>

#include "gridnadir/wodt/tree.hpp"

namespace gridnadir::wodt {

/// Secure-leaf polytopes in original feature units: each secure leaf yields
/// the intersection of its path half-spaces (sign-flipped on left branches),
/// composed with the inverse standardization so A, b act on raw features.
/// An insecure-only tree yields an empty list.
std::vector<SecureRegion> extract_secure_regions(const ObliqueTree& tree);

/// Membership in the union of secure regions.
bool in_secure_region(const std::vector<SecureRegion>& regions, const Vector6d& x);

/// Sign-mirrored copy of a region: the SFR model is linear and the nadir
/// bound symmetric, so flipping the signs of the EPC, DLC and imbalance
/// columns maps a secure shortage-side point onto its surplus-side twin.
/// Used when rules trained on shortage sweeps gate over-frequency events.
SecureRegion mirrored(const SecureRegion& region);

/// The regions plus their mirrors.
std::vector<SecureRegion> with_mirrors(const std::vector<SecureRegion>& regions);

}  // namespace gridnadir::wodt
