#include "ssein/ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ssein/error.hpp"
#include "text_util.hpp"

namespace ssein {

namespace {

struct AminoAcid {
  const char* name;
  char code;
  double kd;
};

constexpr std::array<AminoAcid, 20> kAminoAcids{{
    {"ALA", 'A', 1.8},  {"ARG", 'R', -4.5}, {"ASN", 'N', -3.5}, {"ASP", 'D', -3.5},
    {"CYS", 'C', 2.5},  {"GLN", 'Q', -3.5}, {"GLU", 'E', -3.5}, {"GLY", 'G', -0.4},
    {"HIS", 'H', -3.2}, {"ILE", 'I', 4.5},  {"LEU", 'L', 3.8},  {"LYS", 'K', -3.9},
    {"MET", 'M', 1.9},  {"PHE", 'F', 2.8},  {"PRO", 'P', -1.6}, {"SER", 'S', -0.8},
    {"THR", 'T', -0.7}, {"TRP", 'W', -0.9}, {"TYR", 'Y', -1.3}, {"VAL", 'V', 4.2},
}};

// Columns are 1-based inclusive as in the PDB format description.
std::string_view field(std::string_view line, int first, int last) {
  std::size_t b = static_cast<std::size_t>(first - 1);
  if (b >= line.size())
    return {};
  std::size_t len = std::min<std::size_t>(last - first + 1, line.size() - b);
  return line.substr(b, len);
}

struct RawSse {
  SseKind kind;
  char chain;
  int first_seq;
  int last_seq;
};

struct RawResidue {
  int seq_num;
  char icode;
  std::string name;
  std::map<std::string, Vec3> atoms; // first altloc wins
};

} // namespace

const char* to_string(SseKind kind) { return kind == SseKind::Helix ? "helix" : "strand"; }

char one_letter_code(std::string_view residue_name) {
  for (const auto& aa : kAminoAcids)
    if (residue_name == aa.name)
      return aa.code;
  return '\0';
}

std::string_view three_letter_code(char code) {
  for (const auto& aa : kAminoAcids)
    if (aa.code == code)
      return aa.name;
  throw DomainError(std::string("unknown amino-acid code '") + code + "'");
}

double kyte_doolittle(char code) {
  for (const auto& aa : kAminoAcids)
    if (aa.code == code)
      return aa.kd;
  throw DomainError(std::string("unknown amino-acid code '") + code + "'");
}

std::vector<int> ProteinStructure::sse_sizes() const {
  std::vector<int> out;
  out.reserve(sse_list.size());
  for (const auto& s : sse_list)
    out.push_back(s.size());
  return out;
}

int ProteinStructure::sse_position(int sse_id) const {
  for (std::size_t i = 0; i < sse_list.size(); ++i)
    if (sse_list[i].sse_id == sse_id)
      return static_cast<int>(i);
  return -1;
}

ProteinStructure parse_pdb(std::string_view text, std::string id) {
  std::vector<RawResidue> raw;
  std::vector<RawSse> raw_sses;
  char chain = '\0';
  bool chain_done = false;
  std::string header_id;
  int line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos)
      eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    if (line.empty())
      continue;

    std::string_view rec = field(line, 1, 6);
    if (rec == "ENDMDL")
      break;
    if (rec == "HEADER") {
      header_id = std::string(trim(field(line, 63, 66)));
    } else if (rec == "HELIX ") {
      if (line.size() < 37)
        throw ParseError("truncated HELIX record", line_no);
      raw_sses.push_back({SseKind::Helix, line[19], parse_int(field(line, 22, 25), line_no, "helix start"),
                          parse_int(field(line, 34, 37), line_no, "helix end")});
    } else if (rec == "SHEET ") {
      if (line.size() < 37)
        throw ParseError("truncated SHEET record", line_no);
      raw_sses.push_back({SseKind::Strand, line[21], parse_int(field(line, 23, 26), line_no, "strand start"),
                          parse_int(field(line, 34, 37), line_no, "strand end")});
    } else if (rec == "ATOM  ") {
      if (line.size() < 54)
        throw ParseError("truncated ATOM record", line_no);
      char c = line[21];
      if (chain == '\0')
        chain = c;
      if (c != chain) {
        chain_done = true;
        continue;
      }
      if (chain_done)
        continue;
      int seq = parse_int(field(line, 23, 26), line_no, "residue number");
      char icode = line.size() > 26 ? line[26] : ' ';
      std::string name(trim(field(line, 18, 20)));
      std::string atom(trim(field(line, 13, 16)));
      Vec3 xyz{parse_double(field(line, 31, 38), line_no, "x coordinate"),
               parse_double(field(line, 39, 46), line_no, "y coordinate"),
               parse_double(field(line, 47, 54), line_no, "z coordinate")};
      if (raw.empty() || raw.back().seq_num != seq || raw.back().icode != icode)
        raw.push_back({seq, icode, name, {}});
      raw.back().atoms.emplace(atom, xyz);
    }
  }

  ProteinStructure p;
  p.id = !id.empty() ? std::move(id) : header_id;
  p.chain_id = chain == '\0' ? 'A' : chain;

  std::map<int, int> by_seq; // PDB residue number -> 1-based position
  for (const auto& r : raw) {
    auto ca = r.atoms.find("CA");
    char code = one_letter_code(r.name);
    // Insertion-code residues are outside the supported subset.
    if (ca == r.atoms.end() || code == '\0' || r.icode != ' ' || by_seq.count(r.seq_num)) {
      ++p.dropped_residues;
      continue;
    }
    Residue res;
    res.index = p.residue_count() + 1;
    res.seq_num = r.seq_num;
    res.code = code;
    res.ca = ca->second;
    res.hydrophobicity = kyte_doolittle(code);
    p.residues.push_back(res);
    BackboneAtoms bb;
    bb.ca = ca->second;
    if (auto it = r.atoms.find("N"); it != r.atoms.end())
      bb.n = it->second;
    if (auto it = r.atoms.find("C"); it != r.atoms.end())
      bb.c = it->second;
    p.backbone.push_back(bb);
    by_seq[r.seq_num] = res.index;
  }
  if (p.residues.empty())
    throw EmptyInputError("no CA atoms found");

  // Map SSE ranges onto sequence positions, clamping to residues present.
  std::vector<SseAnnotation> sses;
  for (const auto& s : raw_sses) {
    if (s.chain != p.chain_id)
      continue;
    auto lo = by_seq.lower_bound(std::min(s.first_seq, s.last_seq));
    auto hi = by_seq.upper_bound(std::max(s.first_seq, s.last_seq));
    if (lo == hi)
      continue;
    SseAnnotation a;
    a.kind = s.kind;
    a.first_residue = lo->second;
    a.last_residue = std::prev(hi)->second;
    sses.push_back(a);
  }
  // Overlapping records (bifurcated sheets list a strand twice): first wins.
  std::vector<SseAnnotation> kept;
  for (const auto& a : sses) {
    bool overlaps = std::any_of(kept.begin(), kept.end(), [&](const SseAnnotation& k) {
      return a.first_residue <= k.last_residue && k.first_residue <= a.last_residue;
    });
    if (!overlaps)
      kept.push_back(a);
  }
  std::sort(kept.begin(), kept.end(),
            [](const SseAnnotation& a, const SseAnnotation& b) { return a.first_residue < b.first_residue; });
  for (std::size_t i = 0; i < kept.size(); ++i) {
    kept[i].sse_id = static_cast<int>(i) + 1;
    for (int r = kept[i].first_residue; r <= kept[i].last_residue; ++r)
      p.residues[r - 1].sse_id = kept[i].sse_id;
  }
  p.sse_list = std::move(kept);

  auto backbone = p.backbone;
  return compute_backbone_dihedrals(std::move(p), backbone);
}

ProteinStructure read_pdb_file(const std::filesystem::path& path) {
  return parse_pdb(read_text_file(path), path.stem().string());
}

ProteinStructure compute_backbone_dihedrals(ProteinStructure protein,
                                            std::span<const BackboneAtoms> backbone) {
  const int n = protein.residue_count();
  if (static_cast<int>(backbone.size()) != n)
    throw DimensionError("backbone atom list does not match residue count");
  for (int i = 0; i < n; ++i) {
    auto& r = protein.residues[i];
    const auto& cur = backbone[i];
    r.phi.reset();
    r.psi.reset();
    bool has_prev = i > 0 && protein.residues[i - 1].seq_num == r.seq_num - 1;
    bool has_next = i + 1 < n && protein.residues[i + 1].seq_num == r.seq_num + 1;
    if (has_prev && backbone[i - 1].c && cur.n && cur.ca && cur.c)
      r.phi = dihedral_deg(*backbone[i - 1].c, *cur.n, *cur.ca, *cur.c);
    if (has_next && cur.n && cur.ca && cur.c && backbone[i + 1].n)
      r.psi = dihedral_deg(*cur.n, *cur.ca, *cur.c, *backbone[i + 1].n);
  }
  return protein;
}

std::string write_pdb(const ProteinStructure& p) {
  std::string out;
  char buf[128];
  if (!p.id.empty()) {
    std::snprintf(buf, sizeof buf, "HEADER    %-40s%9s   %-4.4s\n", "", "", p.id.c_str());
    out += buf;
  }
  int helix_no = 0, strand_no = 0;
  for (const auto& s : p.sse_list) {
    const auto& a = p.residues[s.first_residue - 1];
    const auto& b = p.residues[s.last_residue - 1];
    std::string an(three_letter_code(a.code)), bn(three_letter_code(b.code));
    if (s.kind == SseKind::Helix) {
      ++helix_no;
      std::snprintf(buf, sizeof buf, "HELIX  %3d %3d %3s %c %4d  %3s %c %4d  1%30s %5d\n", helix_no,
                    helix_no, an.c_str(), p.chain_id, a.seq_num, bn.c_str(), p.chain_id, b.seq_num, "",
                    s.size());
    } else {
      ++strand_no;
      // One sheet per strand; sheet pairing is not represented.
      std::snprintf(buf, sizeof buf, "SHEET  %3d %3d%2d %3s %c%4d  %3s %c%4d  0\n", 1, strand_no, 1,
                    an.c_str(), p.chain_id, a.seq_num, bn.c_str(), p.chain_id, b.seq_num);
    }
    out += buf;
  }
  int serial = 0;
  for (std::size_t i = 0; i < p.residues.size(); ++i) {
    const auto& r = p.residues[i];
    const auto& bb = p.backbone[i];
    std::string name(three_letter_code(r.code));
    auto atom = [&](const char* atom_name, const Vec3& v, char element) {
      std::snprintf(buf, sizeof buf, "ATOM  %5d  %-3s %3s %c%4d    %8.3f%8.3f%8.3f  1.00  0.00           %c\n",
                    ++serial % 100000, atom_name, name.c_str(), p.chain_id, r.seq_num, v.x, v.y, v.z,
                    element);
      out += buf;
    };
    if (bb.n)
      atom("N", *bb.n, 'N');
    atom("CA", r.ca, 'C');
    if (bb.c)
      atom("C", *bb.c, 'C');
  }
  out += "END\n";
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FamilyIndex load_family_index(std::string_view text, std::string family_id,
                              const std::filesystem::path& base_dir) {
  FamilyIndex idx;
  idx.family_id = std::move(family_id);
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos)
      eol = text.size();
    std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#')
      continue;
    std::vector<std::string_view> cols;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      cols.push_back(trim(line.substr(start, tab == std::string_view::npos ? tab : tab - start)));
      if (tab == std::string_view::npos)
        break;
      start = tab + 1;
    }
    if (cols.size() != 3)
      throw ParseError("expected 3 tab-separated columns, got " + std::to_string(cols.size()), line_no);
    FamilyEntry e;
    e.protein_id = std::string(cols[0]);
    e.path = std::filesystem::path(std::string(cols[1]));
    if (e.path.is_relative() && !base_dir.empty())
      e.path = base_dir / e.path;
    e.sse_count = parse_int(cols[2], line_no, "sse_count");
    if (e.sse_count < 1)
      throw ParseError("sse_count must be at least 1", line_no);
    if (!seen.insert(e.protein_id).second)
      throw DuplicateError("duplicate protein id '" + e.protein_id + "' at line " + std::to_string(line_no));
    idx.entries.push_back(std::move(e));
  }
  if (idx.entries.empty())
    throw EmptyInputError("family index has no entries");
  return idx;
}

FamilyIndex read_family_index_file(const std::filesystem::path& path) {
  return load_family_index(read_text_file(path), path.stem().string(), path.parent_path());
}

} // namespace ssein
