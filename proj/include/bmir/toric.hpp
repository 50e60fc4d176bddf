#pragma once

#include "bmir/cohclass.hpp"
#include "bmir/intmat.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace bmir {

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateMomentError : ModelError {
  using ModelError::ModelError;
};

enum class BlowupMode {
  None,          // plain toric bundle E
  AlongSection,  // blowup of E along alpha(B)
  AlongDivisor,  // blowup of E along alpha(A), A the zero locus of a section of L
};

struct FibrationModel {
  long K = 0, N = 0;
  IntMatrix m;                   // K x N
  std::vector<Rational> omega;   // K
  std::vector<unsigned> base_dims;
  Ring base_ring;
  Ring im_ring;                  // ring of strata lying over A
  std::vector<CohClass> Lambda;  // N classes in base_ring, equivariant part included
  std::vector<unsigned> alpha;   // sorted 0-based K-subset
  BlowupMode mode = BlowupMode::None;
  std::vector<CohClass> L;       // divisor bundles c1(L_a) in base_ring

  unsigned base_rank() const { return static_cast<unsigned>(base_dims.size()); }
  const CohClass& c1L() const;  // the single blowup divisor class
  // Checks rank, alpha, convexity of L and ring shapes; throws ModelError.
  void validate() const;
};

// Base ring for P^{n_1} x ... x P^{n_r}; im ring defaults to the same with the first cap
// lowered by one (Q[P]/(P^n) for a hypersurface in P^n).
Ring base_ring_for(const std::vector<unsigned>& dims);
Ring default_im_ring(const std::vector<unsigned>& dims);

// Lambda_j = lambda_base[j] - l_{j+1}; lambda_base entries are base-class text ("" for 0).
FibrationModel make_model(const IntMatrix& m, const std::vector<Rational>& omega,
                          const std::vector<unsigned>& base_dims,
                          const std::vector<std::string>& lambda_base, const std::vector<unsigned>& alpha,
                          BlowupMode mode, const std::vector<std::string>& L = {}, Ring im_ring = nullptr);

std::vector<std::vector<unsigned>> fixed_points(const FibrationModel& model);

enum class StratumKind { Section, AlphaTilde, Exceptional, ExceptionalL };

struct Stratum {
  StratumKind kind = StratumKind::Section;
  std::vector<unsigned> fixed;  // K-subset for sections and alpha~; alpha otherwise
  int jplus = -1;               // Exceptional only, 0-based coordinate
  Ring ring;

  bool over_A() const { return kind == StratumKind::Exceptional || kind == StratumKind::ExceptionalL; }
  bool is_section() const { return !over_A(); }
  std::string name() const;
};

std::vector<Stratum> strata(const FibrationModel& model);

struct Restriction {
  std::vector<CohClass> P;   // eps*P_i
  CohClass Pt;               // eps*P~ as used by the I-function pullback
  std::vector<CohClass> U;   // eps*U_j
  CohClass c1L;              // restricted c1(L), zero when absent
  std::vector<CohClass> UA;  // eps*U_{A,jj}: index j < N for j outside alpha, index N for [1,0]
  CohClass euler;            // Euler class of the moving normal bundle, case table
  // Geometric fixed-component data used by localization.
  bool component = true;     // false for (alpha,[1,0]), which lies inside alpha~
  CohClass Pt_geometric;
  CohClass euler_geometric;
};

std::vector<CohClass> section_P(const FibrationModel& model, const std::vector<unsigned>& J);
Restriction stratum_restrictions(const FibrationModel& model, const Stratum& eps);

// A global degree-2 class sum_i p_i P_i + pt P~ + base (base in base_ring).
struct LinearClass {
  std::vector<Rational> p;
  Rational pt = 0;
  CohClass base;

  CohClass restrict_to(const Restriction& r, const Ring& ring) const;
  Rational pairing(const std::vector<long>& D, const std::vector<long>& d, long dt) const;
};

LinearClass U_class(const FibrationModel& model, unsigned j);

enum class EdgeFamily { SectionSection, ExceptionalSection, ExceptionalExceptional };

struct EdgeData {
  std::size_t from = 0, to = 0;  // indices into strata(model)
  EdgeFamily family = EdgeFamily::SectionSection;
  CohClass chi;                  // in the ring of the stratum `from`
  std::vector<long> d;           // fiber part of the edge degree
  long dt = 0;                   // P~ pairing
};

std::string family_tag(EdgeFamily f);

// Section-section edges of the fiber of E (before blowup), as index pairs into fixed_points.
std::vector<std::pair<std::size_t, std::size_t>> edges(const FibrationModel& model);
// Directed edges among strata(model) for the configured blowup mode.
std::vector<EdgeData> blowup_edges(const FibrationModel& model, const std::vector<Stratum>& st);

// a . d + b * dt >= 0 in relative coordinates.
struct Inequality {
  std::vector<long> a;
  long b = 0;
  bool holds(const std::vector<long>& d, long dt) const;
  std::string to_string() const;
};

std::vector<Inequality> mori_support(const FibrationModel& model, const Stratum& eps);

IntMatrix gale_dual(const IntMatrix& rays);
// Rays (one row per coordinate) of a fan whose Gale dual is m.
IntMatrix rays_from_matrix(const IntMatrix& m);
// Star subdivision at the cone spanned by `center` (0-based columns); returns [m | 0; e_center | -1].
IntMatrix blowup_matrix(const IntMatrix& m, const std::vector<Rational>& omega,
                        const std::vector<unsigned>& center);
// Row sums: c1 of the toric manifold in the P_i basis.
std::vector<long> c1_row_sums(const IntMatrix& m);

}  // namespace bmir
