#pragma once

#include "probcf/ast.hpp"

namespace probcf {

/// Removes ifp and observe. `ifp(p, c1, c2)` becomes `b ~ bernoulli(p); if (b) c1 else c2`
/// with b a fresh bool initialised to false; `observe(phi)` becomes
/// `weight(ind(phi))`. Idempotent.
Program desugar(const Program& p);

/// True when the program contains no ifp and no observe.
bool is_core(const Program& p);

}  // namespace probcf
