#include "akpz/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace akpz {

std::vector<StarVertex> LocalizationBox::vertices() const {
  std::vector<StarVertex> out;
  for (int l = ell_minus; l <= ell_plus; ++l) {
    int start = z2_minus;
    if (same_parity(start, l)) ++start;  // dual parity is l + 1
    for (int z2 = start; z2 <= z2_plus; z2 += 2) out.push_back(star_vertex(l, z2));
  }
  return out;
}

std::int64_t LocalizationBox::site_count() const {
  std::int64_t n = 0;
  for (int l = ell_minus + 1; l < ell_plus; ++l) {
    int start = z2_minus;
    if (!same_parity(start, l)) ++start;
    if (start <= z2_plus) n += (z2_plus - start) / 2 + 1;
  }
  return n;
}

void LocalizationBox::validate() const {
  if (!(ell_minus < ell_plus) || !(z2_minus < z2_plus))
    throw InputError("localization box must satisfy ell- < ell+ and z- < z+");
}

ParticleConfig::ParticleConfig(int first_line, std::vector<ParticleLine> lines)
    : first_line_(first_line), lines_(std::move(lines)) {}

std::optional<int> ParticleConfig::find_z2(ParticleLabel q) const {
  if (!has_line(q.line)) return std::nullopt;
  const auto& ln = line(q.line);
  int idx = q.p - ln.base_label;
  if (idx < 0 || idx >= static_cast<int>(ln.z2.size())) return std::nullopt;
  return ln.z2[idx];
}

bool ParticleConfig::has(ParticleLabel q) const {
  return find_z2(q).has_value();
}

int ParticleConfig::z2(ParticleLabel q) const {
  auto z = find_z2(q);
  if (!z) {
    std::ostringstream os;
    os << "particle (" << q.p << "," << q.line << ") is not stored in the window";
    throw WindowError(os.str());
  }
  return *z;
}

int ParticleConfig::label_left_of(int l, int pos2) const {
  if (!has_line(l)) {
    std::ostringstream os;
    os << "line " << l << " is outside the window";
    throw WindowError(os.str());
  }
  const auto& ln = line(l);
  if (pos2 < ln.lo2 - 1 || pos2 > ln.hi2 + 1) {
    std::ostringstream os;
    os << "position " << pos2 << "/2 on line " << l
       << " is outside the known span [" << ln.lo2 << "," << ln.hi2 << "]/2";
    throw WindowError(os.str());
  }
  auto it = std::lower_bound(ln.z2.begin(), ln.z2.end(), pos2);
  return ln.base_label - 1 + static_cast<int>(it - ln.z2.begin());
}

bool ParticleConfig::occupied(int l, int pos2) const {
  const auto& ln = line(l);
  return std::binary_search(ln.z2.begin(), ln.z2.end(), pos2);
}

std::size_t ParticleConfig::particle_count() const {
  std::size_t n = 0;
  for (const auto& ln : lines_) n += ln.z2.size();
  return n;
}

namespace {

void add(ValidationReport& r, Violation::Kind kind, ParticleLabel q,
         std::string msg) {
  r.violations.push_back({kind, q, std::move(msg)});
}

std::string label_str(ParticleLabel q) {
  return "(" + std::to_string(q.p) + "," + std::to_string(q.line) + ")";
}

// Particles of `upper` (line l+1) against the known region of `lower` (line l)
// and vice versa; labels must follow z(p,l) < z(p,l+1) < z(p+1,l).
void check_pair(const ParticleConfig& cfg, int l, ValidationReport& r) {
  const auto& lo = cfg.line(l);
  const auto& up = cfg.line(l + 1);
  for (std::size_t i = 0; i < up.z2.size(); ++i) {
    int z = up.z2[i];
    if (z < lo.lo2 - 1 || z > lo.hi2 + 1) continue;
    int q = up.base_label + static_cast<int>(i);
    int left = cfg.label_left_of(l, z);
    if (left != q)
      add(r, Violation::Kind::Interlacement, {q, l + 1},
          "particle " + label_str({q, l + 1}) + " sits right of particle " +
              label_str({left, l}) + "; expected label " + std::to_string(left));
  }
  for (std::size_t i = 0; i < lo.z2.size(); ++i) {
    int z = lo.z2[i];
    if (z < up.lo2 - 1 || z > up.hi2 + 1) continue;
    int q = lo.base_label + static_cast<int>(i);
    int left = cfg.label_left_of(l + 1, z);
    if (left != q - 1)
      add(r, Violation::Kind::Interlacement, {q, l},
          "particle " + label_str({q, l}) + " sits right of particle " +
              label_str({left, l + 1}) + " on the line above");
  }
  // Direct form of the interlacement inequalities for stored labels.
  for (std::size_t i = 0; i < lo.z2.size(); ++i) {
    int p = lo.base_label + static_cast<int>(i);
    auto above = cfg.find_z2({p, l + 1});
    if (!above) continue;
    if (!(lo.z2[i] < *above))
      add(r, Violation::Kind::Interlacement, {p, l},
          "z" + label_str({p, l}) + " >= z" + label_str({p, l + 1}));
    auto next = cfg.find_z2({p + 1, l});
    if (next && !(*above < *next))
      add(r, Violation::Kind::Interlacement, {p, l + 1},
          "z" + label_str({p, l + 1}) + " >= z" + label_str({p + 1, l}));
  }
}

}  // namespace

ValidationReport validate_config(const ParticleConfig& cfg) {
  ValidationReport r;
  for (int l = cfg.first_line(); l <= cfg.last_line(); ++l) {
    const auto& ln = cfg.line(l);
    for (std::size_t i = 0; i < ln.z2.size(); ++i) {
      ParticleLabel q{ln.base_label + static_cast<int>(i), l};
      if (!same_parity(ln.z2[i], l))
        add(r, Violation::Kind::Parity, q,
            "particle " + label_str(q) + " has the wrong parity for its line");
      if (ln.z2[i] < ln.lo2 || ln.z2[i] > ln.hi2)
        add(r, Violation::Kind::Span, q,
            "particle " + label_str(q) + " lies outside the known span");
      if (i > 0 && !(ln.z2[i - 1] < ln.z2[i]))
        add(r, Violation::Kind::Order, q,
            "positions on line " + std::to_string(l) +
                " are not strictly increasing at " + label_str(q));
    }
  }
  if (!r.ok()) return r;  // label arithmetic below assumes sorted lines
  for (int l = cfg.first_line(); l < cfg.last_line(); ++l) check_pair(cfg, l, r);
  return r;
}

double max_gap(const ParticleConfig& cfg, int k) {
  if (k < 1) throw InputError("max_gap: k must be positive");
  double best = 0.0;
  for (const auto& ln : cfg.lines()) {
    if (static_cast<int>(ln.z2.size()) < k + 1)
      throw WindowError("max_gap: window too small for k = " + std::to_string(k));
    for (std::size_t i = k; i < ln.z2.size(); ++i)
      best = std::max(best, 0.5 * (ln.z2[i] - ln.z2[i - k]) / k);
  }
  return best;
}

double omega_m_bound(const ParticleConfig& cfg, int k_max) {
  double best = 0.0;
  for (int k = 1; k <= k_max; ++k) best = std::max(best, max_gap(cfg, k));
  return best;
}

}  // namespace akpz
