#include "mpho/measure.hpp"

#include "mpho/error.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace mpho {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

long long SignedMeasure::total_mass() const {
  long long total = 0;
  for (const auto& m : masses) total += m.multiplicity;
  return total;
}

long long SignedMeasure::positive_count() const {
  long long total = 0;
  for (const auto& m : masses)
    if (m.multiplicity > 0) total += m.multiplicity;
  return total;
}

long long SignedMeasure::negative_count() const {
  long long total = 0;
  for (const auto& m : masses)
    if (m.multiplicity < 0) total -= m.multiplicity;
  return total;
}

SignedMeasure canonicalize(SignedMeasure measure) {
  std::sort(measure.masses.begin(), measure.masses.end(),
            [](const Mass& a, const Mass& b) { return a.location < b.location; });
  std::vector<Mass> merged;
  for (auto& m : measure.masses) {
    if (!merged.empty() && merged.back().location == m.location) {
      merged.back().multiplicity += m.multiplicity;
    } else {
      merged.push_back(std::move(m));
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const Mass& m) { return m.multiplicity == 0; }),
               merged.end());
  measure.masses = std::move(merged);
  return measure;
}

bool is_bar_location(const SignedMeasure& measure, const Mass& mass) {
  return measure.ground == GroundSpace::bars &&
         static_cast<int>(mass.location.size()) == 2 * measure.params;
}

bool has_infinite_death(const std::vector<double>& bar_location, int params) {
  for (int i = 0; i < params; ++i)
    if (std::isinf(bar_location[params + i])) return true;
  return false;
}

double linf_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double best = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d;
    if (std::isinf(a[i]) && std::isinf(b[i]) && a[i] == b[i]) {
      d = 0; // matching infinities contribute nothing
    } else {
      d = std::abs(a[i] - b[i]);
    }
    best = std::max(best, d);
  }
  return best;
}

double bar_diagonal_distance(const std::vector<double>& bar_location, int params) {
  double best = 0;
  for (int i = 0; i < params; ++i) {
    double birth = bar_location[i];
    double death = bar_location[params + i];
    if (std::isinf(death)) return kInf;
    best = std::max(best, std::abs(death - birth));
  }
  return best / 2.0;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream tokens(line);
  std::string token;
  while (std::getline(tokens, token, ',')) {
    std::string trimmed;
    for (char c : token)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed.push_back(c);
    out.push_back(trimmed);
  }
  return out;
}

double parse_real(const std::string& token, int line_no) {
  if (token == "inf" || token == "+inf" || token == "infinity") return kInf;
  try {
    std::size_t used = 0;
    double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    fail(errc::parse_error, "line " + std::to_string(line_no) + ": bad number '" + token + "'");
  }
}

} // namespace

SignedMeasure read_measure(std::istream& in) {
  std::string line;
  int line_no = 0;

  // header
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    header = split_csv(line);
    while (!header.empty() && header.back().empty()) header.pop_back();
    if (!header.empty()) break;
  }
  if (header.empty()) fail(errc::parse_error, "measure file has no header");
  if (header.back() != "multiplicity")
    fail(errc::parse_error, "measure header must end with 'multiplicity'");

  SignedMeasure measure;
  int coords = static_cast<int>(header.size()) - 1;
  if (coords < 1) fail(errc::parse_error, "measure header has no location columns");
  if (header.front().rfind("birth_", 0) == 0) {
    measure.ground = GroundSpace::bars;
    if (coords % 2 != 0) fail(errc::parse_error, "bars measure needs birth and death columns");
    measure.params = coords / 2;
  } else {
    measure.ground = GroundSpace::euclidean;
    measure.params = coords;
  }

  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto fields = split_csv(line);
    while (!fields.empty() && fields.back().empty()) fields.pop_back();
    if (fields.empty()) continue;
    if (static_cast<int>(fields.size()) != coords + 1)
      fail(errc::parse_error, "line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(coords + 1) + " fields, got " +
                                  std::to_string(fields.size()));
    Mass mass;
    for (int i = 0; i < coords; ++i) mass.location.push_back(parse_real(fields[i], line_no));
    try {
      mass.multiplicity = std::stoll(fields.back());
    } catch (const std::exception&) {
      fail(errc::parse_error,
           "line " + std::to_string(line_no) + ": bad multiplicity '" + fields.back() + "'");
    }
    measure.masses.push_back(std::move(mass));
  }
  return canonicalize(std::move(measure));
}

void write_measure(std::ostream& out, const SignedMeasure& measure) {
  if (measure.ground == GroundSpace::bars) {
    for (int i = 1; i <= measure.params; ++i) out << "birth_" << i << ',';
    for (int i = 1; i <= measure.params; ++i) out << "death_" << i << ',';
  } else {
    for (int i = 1; i <= measure.params; ++i) out << "loc_" << i << ',';
  }
  out << "multiplicity\n";
  out << std::setprecision(17);
  for (const auto& mass : measure.masses) {
    for (double c : mass.location) {
      if (std::isinf(c)) {
        out << "inf,";
      } else {
        out << c << ',';
      }
    }
    out << mass.multiplicity << '\n';
  }
}

} // namespace mpho
