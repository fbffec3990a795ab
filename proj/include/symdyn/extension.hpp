#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "symdyn/codes.hpp"

namespace symdyn {

/// One image window at the centre of an in-shift approximant.
struct RealizedWindow {
  Word window;                 // image on [-n, n] ([0, n] one-sided)
  Word context;                // domain word queried
  std::size_t zero = 0;        // index of coordinate 0 inside the context
  PointPresentation realization;
};

struct ImageSetApproximation {
  PointPresentation target;
  std::size_t scale = 0;
  std::size_t depth = 0;
  std::vector<RealizedWindow> windows;  // sorted by window, distinct
  std::size_t contexts = 0;             // in-language contexts examined
  std::size_t undetermined = 0;         // contexts whose image window stayed Unknown

  bool exhausted() const { return windows.empty(); }
};

/// Diameter of the minimal deterministic presentation (longest shortest path).
std::size_t presentation_diameter(const ShiftPresentation& p);

/// Depth used when none is given: 4 n + diameter.
std::size_t default_depth(const ShiftPresentation& p, std::size_t n);

ImageSetApproximation approximate_image_set(const EquivariantOracle& o, const PointPresentation& target,
                                            std::size_t n, std::size_t depth);
ImageSetApproximation approximate_image_set(const EquivariantOracle& o, const PeriodicWord& s, std::size_t n,
                                            std::size_t depth);

struct ExtensionBudgets {
  std::size_t period_max = 6;
  std::size_t scale_max = 8;
  std::optional<std::size_t> depth;        // overrides default_depth
  std::size_t stable_scales = 3;
  std::vector<PointPresentation> extra_targets;  // eventually periodic points probed after the orbits
};

enum class Verdict { extended, obstruction, inconclusive };

std::string_view to_string(Verdict v);

struct ScaleRecord {
  std::size_t scale = 0;
  std::size_t depth = 0;
  std::size_t windows = 0;
};

struct OrbitImage {
  PeriodicWord orbit;
  PointPresentation image;
};

struct Obstruction {
  PointPresentation target;
  std::optional<PeriodicWord> orbit;
  std::size_t scale = 0;                 // largest tested scale
  std::vector<RealizedWindow> windows;   // at that scale
  std::vector<ScaleRecord> growth;
  bool infinite = false;                 // window count >= scale at every tested scale
  std::optional<std::size_t> period_in;
  std::optional<std::size_t> period_out;
};

struct ExtensionResult {
  Verdict verdict = Verdict::inconclusive;
  std::vector<OrbitImage> images;
  std::size_t verification_scale = 0;
  bool exact = false;  // oracle is a sliding block code
  std::optional<Obstruction> obstruction;
  std::size_t targets_checked = 0;
  std::string reason;  // why the run was inconclusive
};

ExtensionResult extend(const EquivariantOracle& o, const ShiftPresentation& x, const ShiftPresentation& y,
                       const ExtensionBudgets& budgets = {});
ExtensionResult extend_one_sided(const EquivariantOracle& o, const ShiftPresentation& x,
                                 const ExtensionBudgets& budgets = {});

struct RoundtripReport {
  bool inverse_verified = false;
  bool maps_into = false;
  Verdict verdict = Verdict::inconclusive;
  std::size_t orbits_compared = 0;
  std::size_t disagreements = 0;
  std::optional<PeriodicWord> first_disagreement;

  bool ok() const {
    return inverse_verified && maps_into && verdict == Verdict::extended && disagreements == 0;
  }
};

/// True when g undoes f on every admissible window of X.
bool is_inverse_on(const SlidingBlockCode& f, const SlidingBlockCode& g, const ShiftPresentation& x);

/// Restricts f to the aperiodic part, extends it back and compares with f on periodic orbits.
RoundtripReport aut_roundtrip(const SlidingBlockCode& f, const SlidingBlockCode& inverse, const ShiftPresentation& x,
                              const ExtensionBudgets& budgets = {});

/// Aperiodic in-shift point reading `left`, then s on [-l, l], then `right`. Tails
/// copied from s are tried first; a periodic glue is retried with padding l + 1.
PointPresentation splice_aperiodic_context(const ShiftPresentation& x, const PeriodicWord& s, const Word& left,
                                           const Word& right, std::size_t ell);

}  // namespace symdyn
