#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ssein/geometry.hpp"

namespace ssein {

enum class SseKind { Helix, Strand };

const char* to_string(SseKind kind);

// A helix or strand. Residue numbers are 1-based sequence positions
// (not PDB residue numbers), inclusive.
struct SseAnnotation {
  int sse_id = 0;
  SseKind kind = SseKind::Helix;
  int first_residue = 0;
  int last_residue = 0;

  int size() const { return last_residue - first_residue + 1; }
  bool contains(int residue) const { return residue >= first_residue && residue <= last_residue; }
  bool operator==(const SseAnnotation&) const = default;
};

struct Residue {
  int index = 0;       // 1-based position in the parsed chain
  int seq_num = 0;     // residue number as written in the PDB file
  char code = 'X';     // one-letter amino-acid code
  Vec3 ca;
  std::optional<double> phi;
  std::optional<double> psi;
  double hydrophobicity = 0;
  std::optional<int> sse_id;

  bool operator==(const Residue&) const = default;
};

// Backbone atoms of one residue; any of them may be missing.
struct BackboneAtoms {
  std::optional<Vec3> n;
  std::optional<Vec3> ca;
  std::optional<Vec3> c;

  bool operator==(const BackboneAtoms&) const = default;
};

struct ProteinStructure {
  std::string id;
  char chain_id = 'A';
  std::vector<Residue> residues;
  std::vector<SseAnnotation> sse_list;
  // Parallel to `residues`.
  std::vector<BackboneAtoms> backbone;
  // Residues seen in ATOM records but dropped (no CA, or non-standard name).
  int dropped_residues = 0;

  int residue_count() const { return static_cast<int>(residues.size()); }
  int sse_count() const { return static_cast<int>(sse_list.size()); }
  std::vector<int> sse_sizes() const;
  // 0-based position of the SSE with this id in sse_list.
  int sse_position(int sse_id) const;

  bool operator==(const ProteinStructure&) const = default;
};

// Parses fixed-column PDB text (ATOM, HELIX, SHEET; first model and first
// chain only). Throws ParseError for malformed records and EmptyInputError
// when no CA atom is found.
ProteinStructure parse_pdb(std::string_view text, std::string id = {});
ProteinStructure read_pdb_file(const std::filesystem::path& path);

// Canonical PDB text: HELIX/SHEET records followed by backbone ATOM records.
// parse_pdb(write_pdb(p)) == p for any p produced by parse_pdb.
std::string write_pdb(const ProteinStructure& protein);

// Fills phi/psi from backbone coordinates; angles whose atoms are missing are
// left empty. `backbone` must be parallel to protein.residues.
ProteinStructure compute_backbone_dihedrals(ProteinStructure protein,
                                            std::span<const BackboneAtoms> backbone);

// Kyte-Doolittle hydropathy. Throws DomainError for unknown codes.
double kyte_doolittle(char code);

char one_letter_code(std::string_view residue_name); // '\0' if not standard
std::string_view three_letter_code(char code);

struct FamilyEntry {
  std::string protein_id;
  std::filesystem::path path;
  int sse_count = 0;
};

struct FamilyIndex {
  std::string family_id;
  std::vector<FamilyEntry> entries;
};

// Tab-separated `protein_id<TAB>path<TAB>sse_count` lines; blank lines and
// `#` comments are skipped. Relative paths are resolved against `base_dir`.
FamilyIndex load_family_index(std::string_view text, std::string family_id = {},
                              const std::filesystem::path& base_dir = {});
FamilyIndex read_family_index_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

} // namespace ssein
