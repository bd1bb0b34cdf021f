#include "ssein/synth_pdb.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "ssein/error.hpp"

namespace ssein {

namespace {

constexpr double kBondNCa = 1.458;
constexpr double kBondCaC = 1.525;
constexpr double kBondCN = 1.329;
constexpr double kAngleNCaC = 111.2;
constexpr double kAngleCaCN = 116.2;
constexpr double kAngleCNCa = 121.7;
constexpr double kCaSpacing = 3.8;

constexpr double kHelixPhi = -57.0, kHelixPsi = -47.0;
constexpr double kStrandPhi = -120.0, kStrandPsi = 130.0;

double rad(double deg) { return deg * std::numbers::pi / 180.0; }

struct Mat3 {
  Vec3 r0, r1, r2;
  Vec3 operator*(const Vec3& v) const { return {r0.dot(v), r1.dot(v), r2.dot(v)}; }
  Mat3 operator*(const Mat3& o) const {
    Vec3 c0{o.r0.x, o.r1.x, o.r2.x}, c1{o.r0.y, o.r1.y, o.r2.y}, c2{o.r0.z, o.r1.z, o.r2.z};
    return {{r0.dot(c0), r0.dot(c1), r0.dot(c2)}, {r1.dot(c0), r1.dot(c1), r1.dot(c2)}, {r2.dot(c0), r2.dot(c1), r2.dot(c2)}};
  }
};

// Rotation by `angle` radians about unit axis `k` (Rodrigues).
Mat3 axis_angle(const Vec3& k, double angle) {
  const double c = std::cos(angle), s = std::sin(angle), t = 1 - c;
  return {{t * k.x * k.x + c, t * k.x * k.y - s * k.z, t * k.x * k.z + s * k.y},
          {t * k.x * k.y + s * k.z, t * k.y * k.y + c, t * k.y * k.z - s * k.x},
          {t * k.x * k.z - s * k.y, t * k.y * k.z + s * k.x, t * k.z * k.z + c}};
}

// Rotation taking unit vector a onto unit vector b.
Mat3 align(const Vec3& a, const Vec3& b) {
  Vec3 axis = a.cross(b);
  const double s = axis.length(), c = a.dot(b);
  if (s < 1e-12) {
    if (c > 0)
      return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    // Half turn about any axis perpendicular to a.
    Vec3 p = std::abs(a.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    return axis_angle(a.cross(p).normalized(), std::numbers::pi);
  }
  return axis_angle(axis / s, std::atan2(s, c));
}

Mat3 random_rotation(Rng& rng) {
  Vec3 axis;
  do {
    axis = {2 * rng.uniform() - 1, 2 * rng.uniform() - 1, 2 * rng.uniform() - 1};
  } while (axis.length() < 0.1 || axis.length() > 1.0);
  return axis_angle(axis.normalized(), 2 * std::numbers::pi * rng.uniform());
}

Vec3 mean_ca(const std::vector<BackboneAtoms>& bb, std::size_t first, std::size_t last) {
  Vec3 s;
  for (std::size_t i = first; i < last; ++i)
    s += *bb[i].ca;
  return s / static_cast<double>(last - first);
}

struct Segment {
  SseKind kind;
  std::vector<BackboneAtoms> atoms;
  std::string codes;
};

// Ideal SSE moved so that its CA centroid is `center` and its axis is `dir`.
Segment place_sse(SseKind kind, int length, const Vec3& center, const Vec3& dir, Rng& rng) {
  const bool helix = kind == SseKind::Helix;
  std::vector<double> phi(length, helix ? kHelixPhi : kStrandPhi), psi(length, helix ? kHelixPsi : kStrandPsi);
  auto bb = build_backbone(phi, psi);
  const std::size_t turn = helix ? std::min<std::size_t>(4, bb.size()) : 1;
  Vec3 axis = (mean_ca(bb, bb.size() - turn, bb.size()) - mean_ca(bb, 0, turn)).normalized();
  Vec3 centroid = mean_ca(bb, 0, bb.size());
  // Random spin about the axis, then align the axis.
  Mat3 r = align(axis, dir) * axis_angle(axis, 2 * std::numbers::pi * rng.uniform());
  for (auto& a : bb) {
    a.n = r * (*a.n - centroid) + center;
    a.ca = r * (*a.ca - centroid) + center;
    a.c = r * (*a.c - centroid) + center;
  }
  static constexpr std::string_view kHelixCodes = "LIALKLAIAL";
  static constexpr std::string_view kStrandCodes = "TVS";
  std::string codes;
  for (int i = 0; i < length; ++i)
    codes += helix ? kHelixCodes[i % kHelixCodes.size()] : kStrandCodes[i % kStrandCodes.size()];
  return {kind, std::move(bb), std::move(codes)};
}

} // namespace

Vec3 place_atom(const Vec3& a, const Vec3& b, const Vec3& c, double bond, double angle_deg, double torsion_deg) {
  const Vec3 bc = (c - b).normalized();
  const Vec3 n = (b - a).cross(bc).normalized();
  const Vec3 m = n.cross(bc);
  const double theta = rad(angle_deg), phi = rad(torsion_deg);
  const double dx = -bond * std::cos(theta);
  const double dy = bond * std::sin(theta) * std::cos(phi);
  const double dz = bond * std::sin(theta) * std::sin(phi);
  return c + bc * dx + m * dy + n * dz;
}

std::vector<BackboneAtoms> build_backbone(std::span<const double> phi, std::span<const double> psi) {
  if (phi.size() != psi.size())
    throw DimensionError("phi and psi lists differ in length");
  std::vector<BackboneAtoms> out;
  if (phi.empty())
    return out;
  Vec3 n{0, 0, 0};
  Vec3 ca{kBondNCa, 0, 0};
  Vec3 c = ca + Vec3{std::cos(rad(180.0 - kAngleNCaC)), std::sin(rad(180.0 - kAngleNCaC)), 0} * kBondCaC;
  out.push_back({n, ca, c});
  for (std::size_t i = 1; i < phi.size(); ++i) {
    Vec3 n2 = place_atom(n, ca, c, kBondCN, kAngleCaCN, psi[i - 1]);
    Vec3 ca2 = place_atom(ca, c, n2, kBondNCa, kAngleCNCa, 180.0);
    Vec3 c2 = place_atom(c, n2, ca2, kBondCaC, kAngleNCaC, phi[i]);
    n = n2;
    ca = ca2;
    c = c2;
    out.push_back({n, ca, c});
  }
  return out;
}

FoldSpec jitter_fold(const FoldSpec& base, int length_jitter, Rng& rng) {
  auto jit = [&](int v) { return v + static_cast<int>(rng.index(2 * length_jitter + 1)) - length_jitter; };
  FoldSpec f = base;
  f.helix_length = std::max(5, jit(base.helix_length));
  f.strand_length = std::max(4, jit(base.strand_length));
  f.helix_axis_gap = base.helix_axis_gap + 0.6 * rng.uniform() - 0.3;
  f.strand_gap = base.strand_gap + 0.6 * rng.uniform() - 0.3;
  return f;
}

std::string synthetic_fold_pdb(const FoldSpec& spec, const std::string& id, Rng& rng) {
  if (spec.helix_length < 5 || spec.strand_length < 4)
    throw DomainError("helices need at least 5 residues and strands at least 4");
  const Vec3 up{0, 0, 1}, down{0, 0, -1};
  std::vector<Segment> sses;
  sses.push_back(place_sse(SseKind::Helix, spec.helix_length, {0, 0, 0}, up, rng));
  sses.push_back(place_sse(SseKind::Helix, spec.helix_length, {spec.helix_axis_gap, 0, 0}, down, rng));
  sses.push_back(place_sse(SseKind::Strand, spec.strand_length, {0, spec.pair_separation, 0}, up, rng));
  sses.push_back(place_sse(SseKind::Strand, spec.strand_length, {spec.strand_gap, spec.pair_separation, 0}, down, rng));

  ProteinStructure p;
  p.id = id;
  auto add = [&](char code, const BackboneAtoms& bb) {
    Residue r;
    r.index = p.residue_count() + 1;
    r.seq_num = r.index;
    r.code = code;
    r.ca = *bb.ca;
    p.residues.push_back(r);
    p.backbone.push_back(bb);
  };
  for (std::size_t s = 0; s < sses.size(); ++s) {
    if (s > 0) {
      // CA-only linker along the straight line between the two SSE ends.
      Vec3 from = *sses[s - 1].atoms.back().ca, to = *sses[s].atoms.front().ca;
      int k = std::max(1, static_cast<int>(std::ceil(distance(from, to) / kCaSpacing)) - 1);
      for (int i = 1; i <= k; ++i)
        add('G', {std::nullopt, from + (to - from) * (static_cast<double>(i) / (k + 1)), std::nullopt});
    }
    const int first = p.residue_count() + 1;
    for (std::size_t i = 0; i < sses[s].atoms.size(); ++i)
      add(sses[s].codes[i], sses[s].atoms[i]);
    p.sse_list.push_back({static_cast<int>(s) + 1, sses[s].kind, first, p.residue_count()});
  }

  const Mat3 rot = random_rotation(rng);
  const Vec3 shift{40 * rng.uniform() - 20, 40 * rng.uniform() - 20, 40 * rng.uniform() - 20};
  for (std::size_t i = 0; i < p.residues.size(); ++i) {
    auto move = [&](std::optional<Vec3>& v) {
      if (v)
        v = rot * *v + shift;
    };
    move(p.backbone[i].n);
    move(p.backbone[i].ca);
    move(p.backbone[i].c);
    p.residues[i].ca = *p.backbone[i].ca;
  }
  return write_pdb(p);
}

std::filesystem::path write_synthetic_family(const std::filesystem::path& dir, const FoldSpec& base, int members,
                                             int length_jitter, Rng& rng) {
  if (members < 1)
    throw DomainError("a family needs at least one member");
  std::filesystem::create_directories(dir);
  std::string index = "# protein_id\tpath\tsse_count\n";
  for (int i = 1; i <= members; ++i) {
    const std::string id = "m" + std::to_string(i);
    Rng member_rng = rng.stream(static_cast<std::uint64_t>(i));
    FoldSpec f = jitter_fold(base, length_jitter, member_rng);
    std::ofstream out(dir / (id + ".pdb"), std::ios::binary);
    out << synthetic_fold_pdb(f, id, member_rng);
    if (!out)
      throw Error("cannot write " + (dir / (id + ".pdb")).string());
    index += id + "\t" + id + ".pdb\t4\n";
  }
  const auto path = dir / "family.tsv";
  std::ofstream out(path, std::ios::binary);
  out << index;
  if (!out)
    throw Error("cannot write " + path.string());
  return path;
}

} // namespace ssein
