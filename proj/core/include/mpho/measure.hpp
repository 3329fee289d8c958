#pragma once

#include <iosfwd>
#include <vector>

namespace mpho {

enum class GroundSpace {
  euclidean, // points of R^n under the sup norm
  bars,      // pairs (birth, death) in R^n x (R^n or infinity), with the
             // diagonal as the throw-away subspace
};

/// A point mass. In the bars ground space the location has 2n coordinates
/// (birth then death); an infinite death is stored as IEEE +infinity in
/// every death coordinate.
struct Mass {
  std::vector<double> location;
  long long multiplicity = 0;
};

/// Finite integer combination of Dirac masses, kept in canonical form:
/// locations sorted lexicographically, duplicates merged, zero
/// multiplicities dropped. The empty measure is canonical, not an error.
struct SignedMeasure {
  GroundSpace ground = GroundSpace::euclidean;
  int params = 1; // n; bars locations have 2n coordinates
  std::vector<Mass> masses;

  long long total_mass() const;
  long long positive_count() const; // with multiplicity
  long long negative_count() const;
};

SignedMeasure canonicalize(SignedMeasure measure);

bool is_bar_location(const SignedMeasure& measure, const Mass& mass);
bool has_infinite_death(const std::vector<double>& bar_location, int params);

/// Sup-norm distance with the extended conventions |inf - inf| = 0 and
/// |inf - x| = inf for finite x.
double linf_distance(const std::vector<double>& a, const std::vector<double>& b);

/// Distance from a bar to the diagonal: half the sup-norm gap between birth
/// and death; infinite for bars that never die.
double bar_diagonal_distance(const std::vector<double>& bar_location, int params);

/// CSV with a header. Euclidean: loc_1..loc_n,multiplicity. Bars:
/// birth_1..birth_n,death_1..death_n,multiplicity with `inf` allowed in
/// death columns.
SignedMeasure read_measure(std::istream& in);
void write_measure(std::ostream& out, const SignedMeasure& measure);

} // namespace mpho
