#pragma once

// Concentration-compactness diagnostics for sequences of probability
// measures on H^n: concentration functions, the vanishing / compactness /
// dichotomy classifier, Brezis-Lieb defects and the subadditivity gap.

#include "hls/grid.hpp"
#include "hls/heisenberg.hpp"

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace hls {

struct Atom {
    GroupPoint point;
    double mass;
};

/// Finite nonnegative measure: point masses, or a cylindrically symmetric
/// density whose node (j, b) carries mass weight(j, b) * value(j, b).
class DiscreteMeasure {
public:
    DiscreteMeasure(int n, std::vector<Atom> atoms);
    explicit DiscreteMeasure(CylGridFunction density);

    int n() const { return n_; }
    bool is_atomic() const { return std::holds_alternative<std::vector<Atom>>(data_); }
    const std::vector<Atom>& atoms() const { return std::get<std::vector<Atom>>(data_); }
    const CylGridFunction& density() const { return std::get<CylGridFunction>(data_); }
    double total_mass() const { return total_; }

    DiscreteMeasure normalized() const;
    /// Default probe centers: atom locations, or the axis points (0, t_b).
    std::vector<GroupPoint> default_probes() const;
    /// Mass of the closed ball {v : |center^{-1} v| <= R}. Density measures
    /// accept only centers on the axis.
    double ball_mass(const GroupPoint& center, double R) const;

private:
    int n_;
    std::variant<std::vector<Atom>, CylGridFunction> data_;
    double total_;
};

/// Left translation v -> w v of every atom.
DiscreteMeasure translate(const DiscreteMeasure& mu, const GroupPoint& w);

struct ConcentrationProbe {
    double mass;
    GroupPoint center;
};

/// max over the probe set of the ball mass; the first probe wins ties.
ConcentrationProbe levy_concentration(const DiscreteMeasure& mu, double R,
                                      const std::vector<GroupPoint>& probes);
ConcentrationProbe levy_concentration(const DiscreteMeasure& mu, double R);

enum class TrichotomyKind { vanishing, compactness, dichotomy };

const char* to_string(TrichotomyKind kind);

struct TrichotomyVerdict {
    TrichotomyKind kind;
    /// Compactness: best probe per sequence element at the smallest radius.
    std::vector<GroupPoint> centers;
    /// Dichotomy: mass near the tracked center, min(tail_mass, 1 - tail_mass).
    double k = 0.0;
    /// Tail value of the averaged profile at the largest radius.
    double tail_mass = 0.0;
    /// Dichotomy: last measure split inside / outside the tracked ball.
    std::optional<std::pair<DiscreteMeasure, DiscreteMeasure>> split;
    std::optional<GroupPoint> tracked_center;
    std::vector<double> R_grid;
    /// Concentration profile averaged over the last third of the sequence.
    std::vector<double> profile;
};

inline const std::vector<double> kDefaultRGrid{0.5, 1.0, 2.0, 4.0};

TrichotomyVerdict classify_trichotomy(const std::vector<DiscreteMeasure>& seq, double eps = 0.05,
                                      const std::vector<double>& R_grid = kDefaultRGrid);

/// (mu restricted to the closed ball, mu restricted to its complement)
std::pair<DiscreteMeasure, DiscreteMeasure> dichotomy_split(const DiscreteMeasure& mu,
                                                            const GroupPoint& center, double R);

/// \int | |f_j|^p - |f - f_j|^p - |f|^p |
double brezis_lieb_defect(const CylGridFunction& f_j, const CylGridFunction& f, double p);

/// 1 - k^{q/p} - (1 - k)^{q/p}
double strict_subadditivity_gap(double k, double p, double q);

/// Synthetic sequences with known verdicts (n = 1, normalized).
namespace generators {

/// A Gaussian-weighted lattice cluster dilated by j = 1..length, keeping the
/// masses: every ball eventually sees a single small atom.
std::vector<DiscreteMeasure> spread(int length, std::uint64_t seed);

/// A fixed lattice bump with heaviest atom at its center, left-translated by
/// random u_j. `centers_out` receives the true u_j.
std::vector<DiscreteMeasure> translate(int length, std::uint64_t seed,
                                       std::vector<GroupPoint>* centers_out = nullptr);

/// Two bumps with masses k and 1 - k whose separation grows like 3 j.
std::vector<DiscreteMeasure> split(int length, std::uint64_t seed, double k = 0.3);

/// f = exp(-rho^2 - t^2) and f + (the same bump shifted to t = D) for each D.
std::vector<CylGridFunction> escaping_bump(const GridPtr& grid, const std::vector<double>& shifts);

}  // namespace generators

}  // namespace hls
