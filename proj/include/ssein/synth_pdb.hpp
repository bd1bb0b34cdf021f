#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ssein/geometry.hpp"
#include "ssein/ingest.hpp"
#include "ssein/rng.hpp"

namespace ssein {

// Ideal backbone grown atom by atom from (phi, psi) pairs with trans peptide
// bonds and standard bond lengths and angles.
std::vector<BackboneAtoms> build_backbone(std::span<const double> phi, std::span<const double> psi);

// Places atom d so that |cd| = bond, angle(b, c, d) = angle_deg and
// dihedral(a, b, c, d) = torsion_deg.
Vec3 place_atom(const Vec3& a, const Vec3& b, const Vec3& c, double bond, double angle_deg, double torsion_deg);

// Layout knobs of a four-SSE protein: an antiparallel helix pair and an
// antiparallel strand pair, far from each other.
struct FoldSpec {
  int helix_length = 14;
  int strand_length = 7;
  double helix_axis_gap = 9.5;  // Angstroms between helix axes
  double strand_gap = 4.8;      // Angstroms between strand lines
  double pair_separation = 35.0;
};

// Draws a family member around `base`: SSE lengths vary by up to `length_jitter`
// residues and gaps by up to 0.3 Angstrom; the whole fold gets a random rigid
// motion.
FoldSpec jitter_fold(const FoldSpec& base, int length_jitter, Rng& rng);

// Canonical PDB text of the fold.
std::string synthetic_fold_pdb(const FoldSpec& spec, const std::string& id, Rng& rng);

// Writes `m<n>.pdb` members plus `family.tsv` into `dir` and returns
// the index path.
std::filesystem::path write_synthetic_family(const std::filesystem::path& dir, const FoldSpec& base, int members,
                                             int length_jitter, Rng& rng);

} // namespace ssein
