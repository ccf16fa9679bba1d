#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewrot/exec.hpp"
#include "skewrot/rational.hpp"

namespace skewrot::squares {

// Piecewise isometry built from two families of concentric squares.  The
// squares are L1 balls (diamonds) centered at (-1/2, 0) and (+1/2, 0); a map
// step slides the point clockwise along the diamond of the active family
// through a fixed arc, and the active family alternates every step.
//
// All side lengths are measured in scaled units (Euclidean length / sqrt 2),
// i.e. per-coordinate: a diamond of L1 radius R has scaled perimeter 4R, and
// one step of size `a` advances the scaled arc position by exactly `a`.

inline constexpr int kLeftFamily = 1;   // diamonds centered at (-1/2, 0)
inline constexpr int kRightFamily = 2;  // diamonds centered at (+1/2, 0)

inline double family_center_x(int family) { return family == kLeftFamily ? -0.5 : 0.5; }

template <class S>
struct GeoState {
    S x;
    S y;
    int next_family = kRightFamily;  // family whose diamond the next step follows
};

using ExactState = GeoState<Rational>;
using FloatState = GeoState<double>;

// One map step.  Throws DegenerateCenterError if the point coincides with the
// active family's center (no diamond through it).
template <class S>
GeoState<S> geometric_step(const S& a, const GeoState<S>& s);

// Breakpoint of the polyline traced by one step: scaled arc position u within
// the step (0 at the start, a at the end) and the plane point reached there.
template <class S>
struct PathNode {
    S u;
    S x;
    S y;
};

template <class S>
struct StepPath {
    GeoState<S> next;
    std::vector<PathNode<S>> nodes;  // start, every corner passed, end
};

template <class S>
StepPath<S> geometric_step_path(const S& a, const GeoState<S>& s);

// --- strip entries ---------------------------------------------------------
//
// The vertical strip |x| <= 1/2 organizes the dynamics: inside it the two
// families move the point along diagonals of slope -1 (left family) or +1
// (right family), outside it their diamond arcs coincide.  A *strip entry* is
// a crossing of x = -1/2 or x = +1/2 into the strip; the triple recorded at
// an entry drives the exact recurrence below.

struct EntryEvent {
    std::size_t owner_step = 0;  // 1-based index of the map step moving inside
    Rational h;                  // ordinate of the crossing point
    Rational a_rem;              // scaled in-strip remainder of the owner step, in (0, a]
    int family = 0;              // family of the owner step
    int boundary = 0;            // -1 for x = -1/2, +1 for x = +1/2
};

inline int family_parity(int family) { return family == kLeftFamily ? 1 : 0; }

// Detects strip-boundary crossings along consecutive step paths.  Landing
// exactly on a boundary only counts once the motion actually changes sides
// (a tangential touch produces no event), so feed steps in order and keep the
// scanner alive across them.
class StripEntryScanner {
  public:
    explicit StripEntryScanner(const ExactState& start);

    // scan one step's polyline; appends any entry events (strip entries only)
    void feed(std::size_t step_index, const StepPath<Rational>& path, std::vector<EntryEvent>& out);

  private:
    struct LineTracker {
        Rational line_x;
        int inward_sign;  // side sign that means "inside the strip"
        int last_side;
        bool has_pending = false;
        std::size_t pending_step = 0;
        Rational pending_u;
        Rational pending_y;
    };

    void scan_line(LineTracker& t, std::size_t step_index, const StepPath<Rational>& path,
                   std::vector<EntryEvent>& out);

    std::array<LineTracker, 2> lines_;
};

// --- exact strip recurrence -------------------------------------------------

struct SquareConfig {
    Rational a;  // scaled step size; the strip recurrence requires 0 < a < 1
};

struct StripState {
    Rational h;   // entry ordinate
    Rational a_n; // in-strip remainder of the entering step, in (0, a]
    int alpha;    // family parity of the entering step (left = 1, right = 0)

    bool operator==(const StripState& o) const { return h == o.h && a_n == o.a_n && alpha == o.alpha; }
};

struct StripAdvance {
    StripState next;
    BigInt steps_to_next;  // complete map steps from this entry's step to the next entry's step
    BigInt gamma;          // complete in-strip steps after the entering one
    Rational beta;         // scaled length of the exiting step still inside the strip
};

// One entry-to-entry advance of the exact recurrence.  Throws
// OutOfRegimeError (message carries the state) when the entry violates the
// |h| > a regime or the return re-enters within the exiting step.
StripAdvance strip_recurrence_advance(const SquareConfig& cfg, const StripState& s);

inline StripState strip_recurrence_step(const SquareConfig& cfg, const StripState& s) {
    return strip_recurrence_advance(cfg, s).next;
}

// --- orbit classification ---------------------------------------------------

struct OrbitClass {
    enum class Kind { periodic, expanding, unresolved };
    Kind kind = Kind::unresolved;
    BigInt period_steps = 0;          // map-step period (0 unless periodic)
    std::size_t period_entries = 0;   // strip-entry period (0 unless periodic)
    std::size_t entries_seen = 0;
    BigInt steps_seen = 0;
    std::string note;                 // failure reason when a batch entry aborted
};

// Classify by iterating the exact recurrence from a strip entry.  Periodicity
// is detected on the (triple, boundary side) state; |h| growing past
// |h0| + 10a with ten strictly increasing values reports expanding.
OrbitClass classify_orbit(const SquareConfig& cfg, const StripState& start, std::size_t max_entries);

// Classify by iterating the geometry itself and hashing exact positions;
// works outside the recurrence regime (e.g. a >= 1).  Entry counting uses the
// same scanner as cross-validation.
OrbitClass classify_orbit_geometric(const SquareConfig& cfg, const ExactState& start,
                                    std::size_t max_steps);

// --- cross validation -------------------------------------------------------

struct CrossValidation {
    bool match = true;
    std::size_t entries_compared = 0;                 // entries confirmed equal (entry 0 included)
    std::optional<std::size_t> first_mismatch;        // entry index, when match == false
    std::string detail;                               // mismatch description / early-stop reason
};

// Runs the geometric trajectory against the recurrence seeded with (h0, a, 0)
// and compares entry triples and step counts exactly.  The walk starts on the
// line whose first step carries it into the strip -- (-1/2, h0) for h0 > 0,
// (+1/2, h0) for h0 < 0 -- with the first step along the right family.
// Requires a in (0, 1] and |h0| >= a (throws OutOfRegimeError otherwise).
// When the recurrence reaches its regime boundary mid-run -- an entry
// ordinate closer to the axis than the step size, or a return that re-enters
// within the exiting step -- the comparison stops early with match == true
// only after the boundary is confirmed against the geometry; entries_compared
// and detail record how far it got and why.
CrossValidation cross_validate(const SquareConfig& cfg, const Rational& h0, std::size_t n_entries,
                               std::size_t max_steps = 2'000'000);

struct CrossValidationCase {
    SquareConfig cfg;
    Rational h0;
};

std::vector<CrossValidation> cross_validate_batch(const std::vector<CrossValidationCase>& cases,
                                                  std::size_t n_entries, Exec exec);

struct ClassifyCase {
    SquareConfig cfg;
    StripState start;
};

std::vector<OrbitClass> classify_batch(const std::vector<ClassifyCase>& cases,
                                       std::size_t max_entries, Exec exec);

// --- growth series ----------------------------------------------------------

// (cumulative map steps, |h|) at each strip entry, iterated until the step
// count reaches min_steps (or the recurrence leaves its regime, whichever is
// first).  Feeds the growth-exponent fit.
std::vector<std::pair<double, double>> entry_growth_series(const SquareConfig& cfg,
                                                           const StripState& start,
                                                           std::uint64_t min_steps,
                                                           std::size_t max_entries = 1u << 20);

// --- floating-point random walk ---------------------------------------------

struct WalkResult {
    std::vector<double> distances;  // Euclidean |z_n| after each step
    FloatState final_state;
};

// Double-precision iteration from a seeded point with |x| + |y| = 1 (uniform
// in scaled arc position on the unit diamond about the origin), first step
// along the right family.
WalkResult random_walk_run(double a, std::uint64_t seed, std::size_t n_steps);

}  // namespace skewrot::squares
