#pragma once

// Depth, dimension, projective dimension and the Cohen-Macaulay flags.

#include <optional>
#include <ostream>

#include "ext.hpp"
#include "resolve.hpp"

namespace bicoh {

struct ModuleProfile {
  int dim = -1;
  int depth = 0;
  int pd = 0;
  bool is_cm = false;
  bool is_gen_cm = false;
  /// Largest i with a nonzero H^i_Q cell in some window; filled in by cd_estimate.
  std::optional<int> cd_estimate;

  friend std::ostream& operator<<(std::ostream& os, const ModuleProfile& p) {
    os << "dim=" << p.dim << " depth=" << p.depth << " pd=" << p.pd << " CM=" << (p.is_cm ? "yes" : "no")
       << " genCM=" << (p.is_gen_cm ? "yes" : "no");
    if (p.cd_estimate) os << " cd(window)=" << *p.cd_estimate;
    return os;
  }
};

/// Profile from an existing Ext complex (so callers can share the resolution).
inline ModuleProfile profile(const Presentation& M, const ExtComplex& ext) {
  const auto& res = ext.resolution();
  if (res.F0.rank() == 0) throw Error(ErrorCode::ZeroModule, "the zero module has no profile");
  const int N = M.ring().nvars();
  ModuleProfile p;
  p.pd = static_cast<int>(res.length());
  p.depth = N - p.pd;
  p.dim = krull_dim(M, res);
  p.is_cm = p.dim == p.depth;
  // H^i_{R+}(M) is dual to Ext^{N-i}(M, omega); finite length <=> Krull dimension <= 0.
  p.is_gen_cm = true;
  for (int i = p.depth; i < p.dim && p.is_gen_cm; ++i)
    if (krull_dim(ext.presentation(N - i)) > 0) p.is_gen_cm = false;
  return p;
}

inline ModuleProfile profile(const Presentation& M) { return profile(M, ExtComplex(M)); }

}  // namespace bicoh
