#include "simulroot/theory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "simulroot/errors.hpp"

namespace simulroot {

namespace {

class ReportBuilder {
 public:
  explicit ReportBuilder(TheoremReport& report) : report_(report) {}

  InequalityCheck& add(std::string name, std::optional<std::size_t> index, Real lhs,
                       std::string relation, Real rhs, bool gating = true) {
    InequalityCheck chk;
    chk.name = std::move(name);
    chk.root_index = index;
    chk.holds = relation == "<" ? lhs < rhs : lhs > rhs;
    chk.lhs = std::move(lhs);
    chk.relation = std::move(relation);
    chk.rhs = std::move(rhs);
    chk.gating = gating;
    report_.checks.push_back(std::move(chk));
    return report_.checks.back();
  }

  InequalityCheck& add_undefined(std::string name, std::optional<std::size_t> index,
                                 std::string relation, std::string note) {
    InequalityCheck chk;
    chk.name = std::move(name);
    chk.root_index = index;
    chk.relation = std::move(relation);
    chk.holds = false;
    chk.note = std::move(note);
    report_.checks.push_back(std::move(chk));
    return report_.checks.back();
  }

  void side_conditions(const Real& c, const Real& q, const Real& d) {
    const Real zero(q.precision());
    add("q > 0", std::nullopt, q, ">", zero);
    add("q < 1", std::nullopt, q, "<", Real(1, q.precision()));
    add("c > 0", std::nullopt, c, ">", zero);
    add("d - 2c > 0", std::nullopt, d - c * 2, ">", zero);
  }

  void finish() {
    report_.pass = true;
    for (const auto& chk : report_.checks) {
      if (chk.gating && !chk.holds) report_.pass = false;
    }
  }

 private:
  TheoremReport& report_;
};

void require_mults(std::span<const int> mults) {
  if (mults.empty()) throw InvariantError("at least one multiplicity is required");
  for (int a : mults) {
    if (a < 1) throw InvariantError("multiplicities must be positive");
  }
}

}  // namespace

Real min_separation(std::span<const Real> roots) {
  if (roots.size() < 2) throw UndefinedSeparationError("separation needs at least two roots");
  Real best = abs(roots[0] - roots[1]);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) best = min(best, abs(roots[i] - roots[j]));
  }
  return best;
}

Real max_separation(std::span<const Real> roots) {
  if (roots.size() < 2) throw UndefinedSeparationError("separation needs at least two roots");
  Real best = abs(roots[0] - roots[1]);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) best = max(best, abs(roots[i] - roots[j]));
  }
  return best;
}

TheoremReport check_theorem1(int n, std::span<const int> mults, const Real& d, const Real& c,
                             const Real& q) {
  require_mults(mults);
  TheoremReport report;
  report.theorem = 1;
  report.params = SeparationParams{d, std::nullopt, c, q, std::nullopt, std::nullopt, std::nullopt};

  ReportBuilder b(report);
  b.side_conditions(c, q, d);
  const Real gap = d - c * 2;
  for (std::size_t i = 0; i < mults.size(); ++i) {
    const long alpha = mults[i];
    b.add("c^2 (n - alpha_i) < (alpha_i d - 2nc)(d - 2c)", i, c * c * (n - alpha), "<",
          (d * alpha - c * (2L * n)) * gap);
  }
  b.finish();
  return report;
}

TheoremReport check_theorem2(int n, std::span<const int> mults, const Real& d,
                             const Real& max_sep, const Real& c, const Real& q, const Real& xi) {
  require_mults(mults);
  const auto cfg = c.precision();
  const Real A = min(abs(sin(xi / 2)), abs(sin(d / 2 - c)));

  TheoremReport report;
  report.theorem = 2;
  report.params = SeparationParams{d, max_sep, c, q, xi, A, std::nullopt};
  report.notes.push_back(
      "per-root verdict uses the contraction inequality with denominator "
      "alpha_i(1 - c^2/8) - (c/2)(2n - alpha_i)/A and the alpha_i/A cross term; the "
      "variant (\"+\" in the denominator, alpha_i/4 factor) is reported as advisory");
  report.notes.push_back("conclusion checked as |x_i^[k] - x_i| <= c q^(3^k)");

  ReportBuilder b(report);
  b.side_conditions(c, q, d);
  b.add("xi > 0", std::nullopt, xi, ">", Real(cfg));
  b.add("2c < xi", std::nullopt, c * 2, "<", xi);
  b.add("max|x_i - x_j| < 2 pi - 2 xi", std::nullopt, max_sep, "<",
        Real::pi(cfg) * 2 - xi * 2);

  if (A.is_zero()) {
    for (std::size_t i = 0; i < mults.size(); ++i) {
      b.add_undefined("c^2 K_i < D_i^2", i, "<", "A = 0; 1/A undefined");
    }
    b.finish();
    return report;
  }

  const Real c2 = c * c;
  for (std::size_t i = 0; i < mults.size(); ++i) {
    const long alpha = mults[i];
    const long rest = 2L * n - alpha;
    const Real common = (rest / (A * A * 2) + c * rest / (A * 6)) * alpha;
    const Real base = Real(alpha * alpha, cfg) + Real(rest * rest, cfg) / (A * A * 4);

    const Real k_gate = base + c / 4 * alpha / A * rest + common;
    const Real d_gate = (1 - c2 / 8) * alpha - c / 2 * rest / A;
    b.add("D_i = alpha_i (1 - c^2/8) - (c/2)(2n - alpha_i)/A > 0", i, d_gate, ">", Real(cfg));
    b.add("c^2 K_i < D_i^2", i, c2 * k_gate, "<", d_gate * d_gate);

    const Real k_variant = base + c / 4 * (Real(alpha, cfg) / 4) * rest + common;
    const Real d_variant = (1 - c2 / 8) * alpha + c / 2 * rest / A;
    auto& adv = b.add("variant form: c^2 {...} < [alpha_i (1 - c^2/8) + (c/2)(2n - alpha_i)/A]^2", i,
                      c2 * k_variant, "<", d_variant * d_variant, false);
    adv.note = "advisory";
  }
  b.finish();
  return report;
}

TheoremReport check_theorem3(int n, std::span<const int> mults, const Real& d, const Real& c,
                             const Real& q) {
  require_mults(mults);
  const auto cfg = c.precision();
  const Real S = sinh((d - c * 2) / 2);

  TheoremReport report;
  report.theorem = 3;
  report.params = SeparationParams{d, std::nullopt, c, q, std::nullopt, std::nullopt, S};
  report.notes.push_back("S cosh^-1 c is evaluated as S / cosh(c)");

  ReportBuilder b(report);
  b.side_conditions(c, q, d);
  const Real sh = abs(sinh(c));
  const Real ch = cosh(c);
  b.add("c |sinh c| + cosh c < 12", std::nullopt, c * sh + ch, "<", Real(12, cfg));

  const std::string name =
      "alpha_i^2 + n S^-1 (alpha_i c + S^-3 |sinh c|)|sinh c| + 2n S^-2 cosh c < alpha_i + S/cosh c";
  for (std::size_t i = 0; i < mults.size(); ++i) {
    const long alpha = mults[i];
    if (!(S > 0)) {
      b.add_undefined(name, i, "<", "S = sinh((d - 2c)/2) is not positive; S^-1 undefined");
      continue;
    }
    const Real lhs = Real(alpha * alpha, cfg) + (c * alpha + sh / pow(S, 3L)) * sh * n / S +
                     ch * (2L * n) / (S * S);
    const Real rhs = alpha + S / ch;
    b.add(name, i, lhs, "<", rhs);
  }
  b.finish();
  return report;
}

Real error_bound(const Real& c, const Real& q, int k) {
  if (k < 0) throw std::invalid_argument("iteration index must be non-negative");
  if (!(c > 0) || !(q > 0) || !(q < 1)) {
    throw InvariantError("error_bound requires c > 0 and 0 < q < 1");
  }
  // log2 of q^(3^k); stay well inside MPFR's exponent range.
  const double log2q = std::log2(q.to_double());
  const double magnitude = std::pow(3.0, k) * std::fabs(log2q);
  if (magnitude > 1.0e8) return Real(c.precision());
  Real power = q;
  for (int i = 0; i < k; ++i) power = power * power * power;
  return c * power;
}

}  // namespace simulroot
