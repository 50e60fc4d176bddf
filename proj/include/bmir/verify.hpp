#pragma once

#include "bmir/mirror.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bmir {

struct EdgeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct WeightDegeneracyError : std::domain_error {
  using std::domain_error::domain_error;
};

// Coeff = numerator / denominator; the denominator collects the reciprocal (negative-range) factors.
struct CoeffResult {
  CohClass numerator, denominator;
  bool degenerate = false;  // numerator not invertible or the pole factor is not unique
  std::string note;
  // (eps'*F, m') with prod (eps'*F + m' z) equal to the denominator at z = -chi/k, in the ring of `from`.
  std::vector<std::pair<CohClass, long>> shifted;
  std::optional<CohClass> value() const;
};

const EdgeData& find_edge(const IAssembler& I, std::size_t from, std::size_t to);

// prod over families f of prod_{m=1}^{k F_f(d_e)} (eps*F_f - m chi/k), Gamma convention for negative
// upper limits, with the vanishing pole factor left out. In the ring of `from`.
CoeffResult recursion_coeff(const IAssembler& I, const EdgeData& e, long k);

struct Verdict {
  Degree degree;
  std::string lhs, rhs;
  bool equal = false;
  bool degenerate = false;
  std::string note;
};

struct RecursionCheckReport {
  std::string from, to, family;
  long k = 1;
  std::vector<Verdict> verdicts;
  bool pass = true;
  std::size_t degenerate = 0;
};

// Res_{z=-chi/k} eps*I(g) d(kz) * Coeff == eps'*I(g - k d_e)(-chi/k) for every g in the box of `from`,
// compared as lhs * numerator == rhs * denominator.
RecursionCheckReport check_recursion(const IAssembler& I, const EdgeData& e, long k, const SeriesBounds& bounds);

struct SupportReport {
  std::string stratum;
  bool pass = true;
  bool extension = false;  // alpha~: support is only bounded by the truncation
  std::vector<std::string> violations;
};

SupportReport check_support(const IAssembler& I, std::size_t s, const NovikovSeries& series);

struct StringDivisorReport {
  bool pass = true;
  std::vector<std::string> failures;
};

// Expands e^{t rho-prefactor / z} e^{t exponent} J^D to order t^order and checks
// z d/dt J = (rho + rho(D) z) J per degree for each generator, plus z d/dt0 J = J and J^0 = z.
StringDivisorReport check_string_divisor(const JFunction& J, int order = 3);

// Integrand: class restricted to a stratum; `geometric` selects the fixed-component data.
using Integrand = std::function<CohClass(const Stratum&, const Restriction&, bool geometric)>;

struct LocalizationReport {
  std::string description;
  std::vector<std::pair<std::string, Scalar>> contributions;
  Scalar total;
  bool polynomial = false;
  std::vector<std::pair<std::string, Scalar>> table_contributions;  // case-table normal bundles
  Scalar table_total;
};

LocalizationReport atiyah_bott_integrate(const IAssembler& I, const Integrand& f, const std::string& description);

// Dimension of the total space: dim B + N - K.
long total_dimension(const FibrationModel& model);

struct HtPropositionReport {
  unsigned n = 0;
  long l = 0;
  std::string status;  // pass, fail, skipped
  std::string reason;
  std::map<long, long> computed, expected;
};

HtPropositionReport check_ht_proposition(unsigned n, long l, long Dmax, PoleSource source = PoleSource::C);

// Runs fn(i) for i < count on up to `jobs` threads; results land in index order.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn);

// Lambda_j with l_j replaced by the given values.
FibrationModel specialize_model(const FibrationModel& model, const std::vector<Rational>& point);
std::vector<Rational> prime_point(std::size_t count, std::size_t attempt);

}  // namespace bmir
