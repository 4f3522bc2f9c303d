#pragma once

// Ext^j(M, omega) from the dual of a minimal free resolution: dimension tables
// and module presentations of ker/im at each spot.

#include <optional>
#include <vector>

#include "resolve.hpp"
#include "table.hpp"

namespace bicoh {

/// Hom(F, omega) for omega = R(-omega_degree): generator shifts omega_degree - c_k.
inline FreeModule dual_module(const FreeModule& F) {
  FreeModule out(F.ring);
  const Bidegree w = F.ring.omega_degree();
  for (const auto& s : F.shifts) out.shifts.push_back(w - s);
  return out;
}

/// Transpose of phi : G -> F as a map F* -> G*.
inline Presentation dual_map(const Presentation& phi) {
  Presentation out(dual_module(phi.source), dual_module(phi.target), {});
  std::vector<std::vector<ModTerm>> cols(phi.target.rank());
  for (std::uint32_t l = 0; l < phi.columns.size(); ++l)
    for (const auto& t : phi.columns[l].terms()) cols[t.comp].push_back({l, t.mon, t.coeff});
  for (auto& c : cols) out.columns.emplace_back(std::move(c), phi.ring().field());
  return out;
}

/// The complex F_0* -> F_1* -> ... -> F_l* computing Ext^j(M, omega).
class ExtComplex {
 public:
  explicit ExtComplex(const Presentation& M) : ExtComplex(resolve(M)) {}

  explicit ExtComplex(FreeResolution res) : res_(std::move(res)) {
    for (std::size_t i = 0; i <= res_.length(); ++i) duals_.push_back(dual_module(res_.module(i)));
    for (const auto& phi : res_.maps) dual_maps_.push_back(dual_map(phi));
  }

  const FreeResolution& resolution() const noexcept { return res_; }
  const RingSpec& ring() const noexcept { return res_.F0.ring; }
  std::size_t length() const noexcept { return res_.length(); }

  /// dim Ext^j(M, omega)_d as the homology of the degree-d pieces.
  long long dim(int j, Bidegree d) const {
    if (j < 0 || static_cast<std::size_t>(j) > length()) return 0;
    const auto& f = ring().field();
    const FreeModule& C = duals_[j];
    PieceBasis here(C, d);
    if (here.size() == 0) return 0;
    DenseMatrix a(f, here.size(), 0);
    DenseMatrix b(f, 0, here.size());
    if (j >= 1) a = degree_matrix(dual_maps_[j - 1], here, PieceBasis(duals_[j - 1], d));
    if (static_cast<std::size_t>(j) < length()) b = degree_matrix(dual_maps_[j], PieceBasis(duals_[j + 1], d), here);
    return static_cast<long long>(homology_dim(a, b));
  }

  GradedTable table(int j, const Window& w) const {
    GradedTable t(w);
    w.for_each([&](Bidegree d) { t.set(d, dim(j, d)); });
    return t;
  }

  /// Presentation of Ext^j(M, omega) = ker / im at spot j.
  Presentation presentation(int j) const {
    if (j < 0 || static_cast<std::size_t>(j) > length()) return Presentation::zero(ring());
    const FreeModule& C = duals_[j];
    Presentation incoming = j >= 1 ? dual_maps_[j - 1] : Presentation(C);
    std::optional<Presentation> outgoing;
    if (static_cast<std::size_t>(j) < length()) outgoing = dual_maps_[j];
    return homology_presentation(incoming, outgoing);
  }

 private:
  FreeResolution res_;
  std::vector<FreeModule> duals_;
  std::vector<Presentation> dual_maps_;
};

inline GradedTable ext_table(const Presentation& M, int j, const Window& w) { return ExtComplex(M).table(j, w); }

inline Presentation ext_presentation(const Presentation& M, int j) { return ExtComplex(M).presentation(j); }

}  // namespace bicoh
