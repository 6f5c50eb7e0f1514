// Acceptance battery: every criterion prints exactly one PASS/FAIL line.
// All checks are exact finite-field identities; the only numeric thresholds
// are the wall-clock budgets stated with the criteria that carry one.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "mel/automorphism.hpp"
#include "mel/suites.hpp"

using namespace mel;

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void criterion(int number, const std::string& label,
               const std::function<bool(std::string&)>& fn) {
  auto t0 = Clock::now();
  std::string detail;
  bool pass = false;
  try {
    pass = fn(detail);
  } catch (const error& e) {
    detail = std::string("error: ") + e.what();
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (!pass) ++g_failures;
  std::cout << (pass ? "PASS" : "FAIL") << " criterion-" << number << ": "
            << label << " (" << std::fixed << std::setprecision(1) << secs
            << " s)";
  if (!detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << "\n" << std::flush;
}

bool suite_passes(const Certificate& cert, std::string& detail) {
  for (const auto& c : cert.checks)
    if (!c.pass) {
      detail = c.name + ": " + c.witness;
      return false;
    }
  return true;
}

double total_ms(const Certificate& cert) {
  double t = 0;
  for (const auto& c : cert.checks) t += c.wall_ms;
  return t;
}

const CheckResult* find_check(const Certificate& cert, const std::string& name) {
  for (const auto& c : cert.checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool within(double ms, double budget_ms, const std::string& what,
            std::string& detail) {
  if (ms <= budget_ms) return true;
  std::ostringstream os;
  os << what << " took " << ms / 1000.0 << " s, budget "
     << budget_ms / 1000.0 << " s";
  detail = os.str();
  return false;
}

}  // namespace

int main() {
  SuiteOptions base;  // n = (1,1), GF(25), seed 0

  criterion(1,
            "bracket soundness: anticommutativity and Jacobi, exhaustive at "
            "n=(1,1) within 60 s, 10^6 seeded triples at n=(2,1) within 120 s",
            [&](std::string& detail) {
              Certificate small = run_suite("jacobi", base);
              if (!suite_passes(small, detail)) return false;
              if (!within(total_ms(small), 60000, "n=(1,1) sweep", detail))
                return false;
              SuiteOptions big = base;
              big.n1 = 2;
              Certificate large = run_suite("jacobi", big);
              if (!suite_passes(large, detail)) return false;
              return within(total_ms(large), 120000, "n=(2,1) sweep", detail);
            });

  criterion(2,
            "grading axioms: the zz, standard and canonical decompositions "
            "verify at n=(1,1) and n=(2,1), with the coarsening identity "
            "label by label",
            [&](std::string& detail) {
              for (int n1 : {1, 2}) {
                SuiteOptions opt = base;
                opt.n1 = n1;
                Certificate c = run_suite("grading", opt);
                if (!suite_passes(c, detail)) return false;
              }
              return true;
            });

  criterion(3,
            "support facts: the zz support generates an index-3 subgroup of "
            "Z^2, the standard support generates Z^2, by integer normal form",
            [&](std::string& detail) {
              for (int n1 : {1, 2}) {
                AlgebraPtr alg = MelikyanAlgebra::make(n1, 1);
                const Field& f5 = make_field(5, 1);
                Subgroup zz = support_subgroup(grading_by_zz_degree(alg, f5));
                Subgroup st =
                    support_subgroup(grading_by_standard_degree(alg, f5));
                if (zz.index_in_parent() != 3ull ||
                    !(zz.abstract_type() == AbelianGroup::z(2))) {
                  detail = "zz support subgroup wrong at n1=" + std::to_string(n1);
                  return false;
                }
                if (!st.is_full()) {
                  detail = "standard support does not generate Z^2";
                  return false;
                }
              }
              return true;
            });

  criterion(4,
            "torus battery over GF(25): lambda multiplicative on 10^4 seeded "
            "pairs within 30 s, every lambda(t) an automorphism, kernel of "
            "size 3, theta facts",
            [&](std::string& detail) {
              Certificate c = run_suite("torus", base);
              if (!suite_passes(c, detail)) return false;
              const CheckResult* mult =
                  find_check(c, "lambda-multiplicative-sampled");
              return within(mult->wall_ms, 30000, "multiplicativity sample",
                            detail);
            });

  criterion(5,
            "restriction: 100 seeded T_W parameter pairs lift through cube "
            "roots in GF(5^6) and pi(lambda(t)) reproduces them exactly",
            [&](std::string& detail) {
              Certificate c = run_suite("torus", base);
              const CheckResult* r = find_check(c, "torus-restriction-lifts");
              if (!r->pass) detail = r->witness;
              return r->pass;
            });

  criterion(6,
            "sigma battery at n1=n2: upsilon and sigma verified, sigma_m "
            "solves (-1,-1) and squares to one, conjugation swaps parameters, "
            "exactly three extensions",
            [&](std::string& detail) {
              Certificate c = run_suite("sigma", base);
              return suite_passes(c, detail);
            });

  criterion(7,
            "duality round trips over Z/2, Z/3, Z/4, Z/6, Z/2 x Z/2 with five "
            "seeded quotients each; the coarsening-pullback identity for all "
            "characters; Z/5 rejected",
            [&](std::string& detail) {
              Certificate c = run_suite("duality", base);
              return suite_passes(c, detail);
            });

  criterion(8,
            "coarsen-recover round trips for 25 seeded quotients agree on the "
            "support; non-refinements are rejected with witnesses",
            [&](std::string& detail) {
              AlgebraPtr alg = MelikyanAlgebra::make(1, 1);
              const Field& f5 = make_field(5, 1);
              Grading std_g = grading_by_standard_degree(alg, f5);
              AbelianGroup z2 = AbelianGroup::z(2);
              std::vector<AbelianGroup> targets{
                  AbelianGroup::z(1),      AbelianGroup::cyclic(2),
                  AbelianGroup::cyclic(3), AbelianGroup::cyclic(4),
                  AbelianGroup::cyclic(6), AbelianGroup(0, {2, 2})};
              Rng rng(base.seed + 8);
              for (int rep = 0; rep < 25; ++rep) {
                const AbelianGroup& h = targets[rep % targets.size()];
                auto elem = [&] {
                  std::vector<long long> fr(h.rank()), to(h.torsion().size());
                  for (auto& v : fr)
                    v = static_cast<long long>(rng.below(9)) - 4;
                  for (std::size_t i = 0; i < to.size(); ++i)
                    to[i] = static_cast<long long>(rng.below(h.torsion()[i]));
                  return h.element(fr, to);
                };
                GroupHom phi(z2, h, {elem(), elem()});
                Grading coarse = coarsen(std_g, phi);
                RecoverResult r = recover_homomorphism(std_g, coarse);
                if (!r.ok) {
                  detail = "recover failed at rep " + std::to_string(rep) +
                           ": " + r.message;
                  return false;
                }
                for (const auto& s : std_g.support())
                  if (!(r.hom->apply(s) == phi.apply(s))) {
                    detail = "recovered map differs on a support label";
                    return false;
                  }
              }
              // negative: a twisted grading is not a coarsening of the
              // standard one and is reported with a witness component
              MelikyanElement top =
                  MelikyanElement::from_wt(TildeField::monomial(
                      alg->shape(), f5, std::vector<int>{4, 4}, 0));
              Grading twisted = apply_automorphism(
                  grading_by_canonical_degree(alg, f5),
                  exp_ad(alg, top).matrix());
              RecoverResult bad = recover_homomorphism(std_g, twisted);
              if (bad.ok || !bad.witness_label.has_value()) {
                detail = "twisted non-refinement was not rejected";
                return false;
              }
              // and a coarse decomposition never refines a strictly finer one
              RecoverResult rev = recover_homomorphism(
                  grading_by_canonical_degree(alg, f5),
                  grading_by_zz_degree(alg, f5));
              if (rev.ok || !rev.witness_label.has_value()) {
                detail = "reverse refinement was not rejected";
                return false;
              }
              return true;
            });

  criterion(9,
            "twist and recover: 20 seeded runs covering lambda, exp(ad y), "
            "sigma_m and their products, each recovered by eigenspaces and "
            "untwisting, within 5 min",
            [&](std::string& detail) {
              double total = 0;
              for (std::uint64_t seed = 0; seed < 20; ++seed) {
                SuiteOptions opt = base;
                opt.seed = seed;
                Certificate c = twist_recover(opt);
                total += total_ms(c);
                std::string inner;
                if (!suite_passes(c, inner)) {
                  detail = "seed " + std::to_string(seed) + ": " + inner;
                  return false;
                }
              }
              return within(total, 300000, "20 runs", detail);
            });

  criterion(10,
            "simplicity probe: iterated bracket closure from every basis "
            "element reaches the full algebra",
            [&](std::string& detail) {
              Certificate c = run_suite("simplicity", base);
              return suite_passes(c, detail);
            });

  criterion(11,
            "negative controls: perturbed gradings fail with witnesses, "
            "exp_ad rejects insufficiently nilpotent elements, in_torus "
            "rejects sigma_m",
            [&](std::string& detail) {
              AlgebraPtr alg = MelikyanAlgebra::make(1, 1);
              const Field& f5 = make_field(5, 1);
              const Field& f25 = make_field(5, 2);

              // swap two component labels of the zz grading
              Grading zz = grading_by_zz_degree(alg, f5);
              AbelianGroup z2 = AbelianGroup::z(2);
              GroupElement a = z2.element({-3, 0}, {});
              GroupElement b = z2.element({-1, -1}, {});
              std::vector<GroupElement> degrees;
              for (std::uint32_t i = 0; i < alg->dim(); ++i) {
                GroupElement d = zz.degree(i);
                degrees.push_back(d == a ? b : d == b ? a : d);
              }
              VerifyResult r = verify_grading(
                  Grading::monomial(alg, f5, z2, std::move(degrees)));
              if (r.pass || !r.witness.has_value()) {
                detail = "label swap was not caught";
                return false;
              }
              SparseVec w = alg->bracket_coords(to_sparse(r.witness->y),
                                                to_sparse(r.witness->z), f5);
              if (to_dense(w, alg->dim()) != r.witness->bracket) {
                detail = "witness bracket does not recompute";
                return false;
              }

              // exp_ad must reject d1
              bool rejected = false;
              try {
                exp_ad(alg, MelikyanElement::from_w(VectorField::monomial(
                                alg->shape(), f5, std::vector<int>{0, 0}, 0)));
              } catch (const error&) {
                rejected = true;
              }
              if (!rejected) {
                detail = "exp_ad accepted a non-nilpotent element";
                return false;
              }

              // in_torus must reject sigma_m with an obstruction
              InTorusResult it = in_torus(sigma_m(alg, f25).psi);
              if (it.yes || it.obstruction.empty()) {
                detail = "sigma_m was not rejected by the torus test";
                return false;
              }
              return true;
            });

  std::cout << (g_failures == 0 ? "acceptance: all criteria passed"
                                : "acceptance: " + std::to_string(g_failures) +
                                      " criteria FAILED")
            << "\n";
  return g_failures == 0 ? 0 : 1;
}
