#pragma once

#include "bmir/series.hpp"
#include "bmir/toric.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace bmir {

struct PreconditionError : std::logic_error {
  using std::logic_error::logic_error;
};
struct NormalizationError : std::domain_error {
  using std::domain_error::domain_error;
};
struct ConvexityError : std::domain_error {
  using std::domain_error::domain_error;
};

using BaseDegree = std::vector<long>;

// J(t) = sum_D Q^D e^{sum_i t_i (prefactor_i / z + exponent_D[i])} J^D, stored at t = 0.
// J^D includes the leading z, so J^0 = z.
struct JFunction {
  Ring ring;
  std::vector<unsigned> dims;
  std::vector<long> Dmax;
  std::map<BaseDegree, ZRat> terms;
  std::vector<CohClass> prefactor;                  // class multiplying t_i / z, normally H_i
  std::map<BaseDegree, std::vector<long>> exponent;  // e^{t(D)} bookkeeping, normally D itself
  bool div_str_primary = true;

  const ZRat& at(const BaseDegree& D) const;
};

// All degrees 0 <= D_i <= Dmax_i in the iota order: total degree, then lexicographic with the
// first generator descending.
std::vector<BaseDegree> iota_order(const std::vector<long>& Dmax);

JFunction j_projective(const std::vector<unsigned>& dims, const std::vector<long>& Dmax);

// Multiplies J^D by prod_a prod_{m=1}^{c1(L_a)(D)} (c1(L_a) + mz).
JFunction quantum_lefschetz_twist(const JFunction& J, const std::vector<CohClass>& L);

using DegreePredicate = std::function<bool(const BaseDegree&)>;
// D with every D_i divisible by step.
DegreePredicate multiples_of(long step);

std::map<BaseDegree, ZRat> restrict_to_sublattice(const std::map<BaseDegree, ZRat>& series,
                                                  const DegreePredicate& keep);

// B_D = i_A*(twisted J^D / z) in the target ring.
std::map<BaseDegree, ZRat> b_series(const JFunction& twisted, const Ring& target);

enum class PoleSource { C, B };

struct HtTable {
  std::map<BaseDegree, long> ht;
  std::map<BaseDegree, std::optional<int>> pole_order;  // d_n; empty when the series term vanishes
  std::vector<BaseDegree> order;
  std::map<BaseDegree, ZRat> B, A, C;
};

struct HtOptions {
  DegreePredicate sublattice;  // defaults to the full lattice
  PoleSource source = PoleSource::C;
  Ring im_ring;                // defaults to the twisted J ring
};

HtTable ht_function(const JFunction& twisted, const HtOptions& opts);

// sum_a Gamma_a^D prod_{a' != a} prod_{m=1}^{c1(L_a')(D)} (c1(L_a') + mz); missing inputs are zero.
ZRat gamma_assemble(const std::vector<const std::map<BaseDegree, ZRat>*>& inputs,
                    const std::vector<CohClass>& L, const BaseDegree& D, const Ring& ring);

// Linear class together with the rule 1/Gamma(F, F(degree)) in the I-function denominator.
struct Family {
  LinearClass F;
  std::string label;
};

std::vector<Family> i_function_families(const FibrationModel& model);

struct IFunctionInput {
  JFunction J;                                     // untwisted base J-function
  long ht = 0;                                     // z^ht inserted in the twisted numerator
  std::map<BaseDegree, ZRat> gamma;                // Gamma^D, defaults to zero
};

// Term-by-term assembly of the stratum pullbacks. Keys are relative: the global degree is
// d = eps*P(D) + d_rel, d~ = eps*P~(D) + dt_rel.
class IAssembler {
 public:
  IAssembler(const FibrationModel& model, IFunctionInput input);

  const FibrationModel& model() const { return model_; }
  const std::vector<Stratum>& strata() const { return strata_; }
  const std::vector<Restriction>& restrictions() const { return res_; }
  const std::vector<Family>& families() const { return families_; }
  const std::vector<EdgeData>& edges() const { return edges_; }

  // Global fiber degree (d, d~) of a relative key at stratum s.
  std::pair<std::vector<long>, long> global_degree(std::size_t s, const Degree& rel) const;
  Degree relative_degree(std::size_t s, const BaseDegree& D, const std::vector<long>& d, long dt) const;

  ZRat term(std::size_t s, const Degree& rel) const;
  NovikovSeries pullback(std::size_t s, const SeriesBounds& bounds) const;

 private:
  FibrationModel model_;
  IFunctionInput input_;
  std::vector<Stratum> strata_;
  std::vector<Restriction> res_;
  std::vector<Family> families_;
  std::vector<EdgeData> edges_;
};

}  // namespace bmir
