#include "sympath/verify.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "sympath/errors.hpp"
#include "sympath/evaluate.hpp"
#include "sympath/index.hpp"
#include "sympath/splitting.hpp"
#include "sympath/version.hpp"

namespace sympath {

namespace {

constexpr const char* kCore = "core";
constexpr const char* kExternal = "external-definition";

std::string tag(const std::string& base, std::int64_t k) {
    return base + "[k=" + std::to_string(k) + "]";
}
std::string tag(const std::string& base, std::int64_t k, std::int64_t m) {
    return base + "[k=" + std::to_string(k) + ",m=" + std::to_string(m) + "]";
}

// Appends checks to a report, converting engine exceptions into
// engine-error entries that can never pass.
class Recorder {
public:
    explicit Recorder(VerificationReport& rep) : rep_(rep) {}

    void exact(const std::string& name, const char* section,
               const std::function<std::int64_t()>& lhs,
               const std::function<std::int64_t()>& rhs) {
        Check c;
        c.name = name;
        c.section = section;
        try {
            std::int64_t l = lhs();
            std::int64_t r = rhs();
            c.lhs = static_cast<double>(l);
            c.rhs = static_cast<double>(r);
            c.pass = (l == r);
        } catch (const std::exception& e) {
            c.engine_error = true;
            c.error = e.what();
        }
        rep_.checks.push_back(std::move(c));
    }

    void leq(const std::string& name, const char* section,
             const std::function<std::int64_t()>& lhs,
             const std::function<std::int64_t()>& rhs) {
        Check c;
        c.name = name;
        c.section = section;
        c.relation = "<=";
        try {
            std::int64_t l = lhs();
            std::int64_t r = rhs();
            c.lhs = static_cast<double>(l);
            c.rhs = static_cast<double>(r);
            c.pass = (l <= r);
        } catch (const std::exception& e) {
            c.engine_error = true;
            c.error = e.what();
        }
        rep_.checks.push_back(std::move(c));
    }

    void near(const std::string& name, const char* section, double tol,
              const std::function<double()>& lhs, const std::function<double()>& rhs) {
        Check c;
        c.name = name;
        c.section = section;
        c.relation = "~";
        c.tolerance = tol;
        try {
            c.lhs = lhs();
            c.rhs = rhs();
            c.pass = std::abs(c.lhs - c.rhs) < tol;
        } catch (const std::exception& e) {
            c.engine_error = true;
            c.error = e.what();
        }
        rep_.checks.push_back(std::move(c));
    }

private:
    VerificationReport& rep_;
};

// floor(N / (m_bar * mean)) and the residual |{x} - chi|, exact when the
// mean index is rational.
struct ScanPoint {
    std::int64_t floor_x = 0;
    double residual = 0.0;
};
ScanPoint scan_point(const PathSpec& spec, std::int64_t N, std::int64_t mbar, int chi,
                     const Config& cfg) {
    ScanPoint out;
    if (std::optional<Fraction> fr = mean_index_exact(spec, cfg)) {
        Fraction x = Fraction(N) / (Fraction(mbar) * *fr);
        out.floor_x = x.floor();
        Fraction f = x - Fraction(out.floor_x);
        Fraction r = chi == 0 ? f : Fraction(1) - f;
        out.residual = r.to_double();
        return out;
    }
    long double x = static_cast<long double>(N) /
                    (static_cast<long double>(mbar) * static_cast<long double>(mean_index(spec, cfg)));
    out.floor_x = static_cast<std::int64_t>(std::floor(x));
    long double f = x - std::floor(x);
    out.residual = static_cast<double>(chi == 0 ? f : 1.0L - f);
    return out;
}

void require_cert_shape(const std::vector<PathSpec>& specs, const JumpCertificate& cert) {
    if (specs.empty()) throw ValidationError("verification: empty collection");
    if (cert.m.size() != specs.size() || cert.chi.size() != specs.size())
        throw ValidationError("verification: certificate arity does not match the collection");
    if (cert.N < 1 || cert.m_bar < 1)
        throw ValidationError("verification: certificate fields must be positive");
    for (std::int64_t mk : cert.m)
        if (mk < 1) throw ValidationError("verification: certificate iterates must be positive");
}

} // namespace

int VerificationReport::passed() const {
    int n = 0;
    for (const Check& c : checks) n += c.pass ? 1 : 0;
    return n;
}
int VerificationReport::failed() const { return static_cast<int>(checks.size()) - passed(); }
bool VerificationReport::all_pass() const { return failed() == 0; }

VerificationReport verify_ecijt(const std::vector<PathSpec>& specs, const JumpCertificate& cert,
                                std::int64_t m_bar_range, const Config& cfg) {
    require_cert_shape(specs, cert);
    if (m_bar_range < 1) throw ValidationError("verify_ecijt: identity range must be >= 1");
    for (const PathSpec& s : specs) validate(s, cfg);

    VerificationReport rep;
    rep.cert = cert;
    rep.tool_version = kToolVersion;
    Recorder rec(rep);

    const std::int64_t N = cert.N;
    const Angle one = Angle::exact_pi(0, 1);

    // Certificate invariants, re-derived from the paths.
    for (std::size_t k = 0; k < specs.size(); ++k) {
        const std::int64_t kk = static_cast<std::int64_t>(k) + 1;
        ScanPoint sp = scan_point(specs[k], N, cert.m_bar, cert.chi[k], cfg);
        rec.exact(tag("certificate_iterate", kk), kCore,
                  [&] { return cert.m[k]; },
                  [&] { return (sp.floor_x + cert.chi[k]) * cert.m_bar; });
        rec.near(tag("certificate_residual", kk), kCore, cert.epsilon,
                 [&] { return sp.residual; }, [] { return 0.0; });
    }

    // Nullity window below the first rational resonance.
    std::optional<std::int64_t> mc = m_check(specs, cfg);
    const std::int64_t cap = std::max<std::int64_t>(m_bar_range, 12);
    std::int64_t window_top = mc ? std::min(*mc - 1, cap) : cap;
    if (!mc)
        rep.notes.push_back("no rational resonance anywhere: base-nullity window checked up to m = " +
                            std::to_string(cap));
    else if (*mc - 1 > cap)
        rep.notes.push_back("base-nullity window capped at m = " + std::to_string(cap) +
                            " (first resonance at m = " + std::to_string(*mc) + ")");

    for (std::size_t k = 0; k < specs.size(); ++k) {
        const std::int64_t kk = static_cast<std::int64_t>(k) + 1;
        const PathSpec& spec = specs[k];
        const std::int64_t mk = cert.m[k];
        auto nu = [&](std::int64_t it) { return index_at_iterate(spec, it, cfg).nu; };
        auto idx = [&](std::int64_t it) { return index_at_iterate(spec, it, cfg).i; };

        // Minus-direction instances look at the iterate 2 m_k - m, so they are
        // only defined for m < 2 m_k; small certificates restrict the range.
        bool clipped = false;
        for (std::int64_t m = 1; m <= window_top; ++m) {
            if (2 * mk - m >= 1)
                rec.exact(tag("nu_below_first_resonance_minus", kk, m), kCore,
                          [&, m] { return nu(2 * mk - m); }, [&] { return nu(1); });
            else
                clipped = true;
            rec.exact(tag("nu_below_first_resonance_plus", kk, m), kCore,
                      [&, m] { return nu(2 * mk + m); }, [&] { return nu(1); });
        }

        std::int64_t splus1 = 0;
        bool splus_ok = true;
        try {
            splus1 = splitting_numbers(spec, one, cfg).plus;
        } catch (const std::exception&) {
            splus_ok = false;
        }

        for (std::int64_t m = 1; m <= m_bar_range; ++m) {
            if (2 * mk - m >= 1)
                rec.exact(tag("nu_jump_symmetry_minus", kk, m), kCore,
                          [&, m] { return nu(2 * mk - m); }, [&, m] { return nu(m); });
            else
                clipped = true;
            rec.exact(tag("nu_jump_symmetry_plus", kk, m), kCore,
                      [&, m] { return nu(2 * mk + m); }, [&, m] { return nu(m); });
            rec.exact(tag("index_jump_plus", kk, m), kCore,
                      [&, m] { return idx(2 * mk + m); }, [&, m] { return 2 * N + idx(m); });
            if (2 * mk - m >= 1)
                rec.exact(tag("index_jump_minus", kk, m), kCore,
                          [&, m] { return idx(2 * mk - m); },
                          [&, m] {
                              if (!splus_ok)
                                  throw NumericalFailure("splitting at 1 failed for this path");
                              return 2 * N - idx(m) -
                                     2 * (splus1 + resonant_split_sum(spec, mk, m, cfg));
                          });
            else
                clipped = true;
        }
        if (clipped)
            rep.notes.push_back(tag("domain", kk) + ": minus-direction checks skipped for m >= 2*m_k = " +
                                std::to_string(2 * mk));

        // Adopted definitions: total splitting constant over (0, 2*pi) and
        // the near-resonance window at delta.
        NearResonanceSum nr;
        bool nr_ok = true;
        try {
            nr = near_resonance_split_sum(spec, mk, cfg.delta, cfg);
            for (const std::string& w : nr.warnings) rep.notes.push_back(tag("near_resonance", kk) + ": " + w);
        } catch (const std::exception&) {
            nr_ok = false;
        }
        rec.exact(tag("index_at_double_jump", kk), kExternal,
                  [&] { return idx(2 * mk); },
                  [&] {
                      if (!splus_ok || !nr_ok)
                          throw NumericalFailure("splitting profile failed for this path");
                      return 2 * N - (splus1 + total_split_sum(spec, cfg) - 2 * nr.value);
                  });
    }
    rep.notes.push_back("external-definition section: the total splitting constant (sum of "
                        "S_minus over (0, 2*pi)) and the near-resonance window delta = " +
                        std::to_string(cfg.delta) + " are adopted definitions");
    return rep;
}

VerificationReport verify_ir(const std::vector<PathSpec>& specs, const JumpCertificate& cert,
                             std::int64_t l0, double eta, const Config& cfg) {
    require_cert_shape(specs, cert);
    if (l0 < 1) throw ValidationError("verify_ir: shift range must be >= 1");
    if (!(eta > 0.0)) throw ValidationError("verify_ir: eta must be positive");
    for (const PathSpec& s : specs) validate(s, cfg);

    // Sufficient condition for the mean-index check: the scan residual bound
    // 2 * m_bar * mean_k * epsilon must sit below eta.
    for (std::size_t k = 0; k < specs.size(); ++k) {
        double bound = 2.0 * static_cast<double>(cert.m_bar) * mean_index(specs[k], cfg) *
                       cert.epsilon;
        if (!(bound < eta)) {
            std::ostringstream os;
            os << "verify_ir: residual bound 2*m_bar*mean*epsilon = " << bound << " for path "
               << (k + 1) << " is not below eta = " << eta
               << "; rerun the tuple search with a smaller epsilon";
            throw PreconditionError(os.str());
        }
    }

    VerificationReport rep;
    rep.cert = cert;
    rep.tool_version = kToolVersion;
    Recorder rec(rep);

    const std::int64_t d = 2 * cert.N;
    const Angle one = Angle::exact_pi(0, 1);

    for (std::size_t k = 0; k < specs.size(); ++k) {
        const std::int64_t kk = static_cast<std::int64_t>(k) + 1;
        const PathSpec& spec = specs[k];
        const std::int64_t period = 2 * cert.m[k];
        const std::int64_t n = half_dim(spec);
        auto rec_at = [&](std::int64_t it) { return index_at_iterate(spec, it, cfg); };
        auto beta_minus = [&](std::int64_t it) {
            return splitting_numbers(iterate(spec, it), one, cfg).minus;
        };

        rec.near(tag("mean_at_period", kk), kCore, eta,
                 [&] { return rec_at(period).mean; },
                 [&] { return static_cast<double>(d); });
        rec.leq(tag("index_lower_bound_at_period", kk), kCore,
                [&] { return d - n; }, [&] { return rec_at(period).mu_minus; });
        rec.leq(tag("index_order_at_period", kk), kCore,
                [&] { return rec_at(period).mu_minus; }, [&] { return rec_at(period).mu_plus; });
        rec.leq(tag("index_upper_bound_at_period", kk), kCore,
                [&] { return rec_at(period).mu_plus; }, [&] { return d + n; });

        std::int64_t splus1 = 0, sminus1 = 0;
        bool split_ok = true;
        try {
            SplitPair sp = splitting_numbers(spec, one, cfg);
            splus1 = sp.plus;
            sminus1 = sp.minus;
        } catch (const std::exception&) {
            split_ok = false;
        }
        rec.exact(tag("split_symmetric_at_one", kk), kCore,
                  [&] {
                      if (!split_ok) throw NumericalFailure("splitting at 1 failed");
                      return splus1;
                  },
                  [&] { return sminus1; });

        // Reflected instances look at the iterate 2 m_k - l and are only
        // defined for l < 2 m_k; shift instances hold for every l >= 1.
        if (l0 >= period)
            rep.notes.push_back(tag("domain", kk) + ": reflected checks skipped for l >= 2*m_k = " +
                                std::to_string(period));
        for (std::int64_t l = 1; l <= l0; ++l) {
            rec.exact(tag("mu_minus_shift", kk, l), kCore,
                      [&, l] { return rec_at(period + l).mu_minus; },
                      [&, l] { return d + rec_at(l).mu_minus; });
            rec.exact(tag("mu_plus_shift", kk, l), kCore,
                      [&, l] { return rec_at(period + l).mu_plus; },
                      [&, l] { return d + rec_at(l).mu_plus; });
            if (period - l < 1) continue;
            rec.exact(tag("mu_plus_reflect", kk, l), kCore,
                      [&, l] { return rec_at(period - l).mu_plus; },
                      [&, l] {
                          std::int64_t bm = beta_minus(l);
                          std::int64_t bp = rec_at(l).nu - bm;
                          return d - rec_at(l).mu_minus + (bp - bm);
                      });

            // Translation identities between the two formulations.
            rec.exact(tag("beta_gap_translation", kk, l), kCore,
                      [&, l] {
                          std::int64_t bm = beta_minus(l);
                          return (rec_at(l).nu - bm) - bm;
                      },
                      [&, l] {
                          if (!split_ok) throw NumericalFailure("splitting at 1 failed");
                          return rec_at(period - l).nu -
                                 2 * (splus1 + resonant_split_sum(spec, cert.m[k], l, cfg));
                      });
            rec.exact(tag("beta_sum_nullity", kk, l), kCore,
                      [&, l] { return rec_at(l).nu; },
                      [&, l] { return rec_at(period - l).nu; });
            rec.exact(tag("beta_minus_bott", kk, l), kCore,
                      [&, l] { return beta_minus(l); },
                      [&, l] {
                          if (!split_ok) throw NumericalFailure("splitting at 1 failed");
                          return sminus1 + resonant_split_sum(spec, cert.m[k], l, cfg);
                      });
        }
    }
    return rep;
}

VerificationReport verify_prop1_suite(int dim_bound, const Config& cfg) {
    if (dim_bound < 2) throw PreconditionError("verify_prop1_suite: dimension bound must be >= 2");

    struct Item {
        BlockSpec block;
        int dim;
        std::string label;
    };
    std::vector<Item> catalog;
    for (int nu0 = 1; nu0 <= 2; ++nu0)
        catalog.push_back({ZeroForm{nu0}, 2 * nu0, "zero" + std::to_string(nu0)});
    for (int dd : {1, 3, 5}) catalog.push_back({Q0Block{dd}, 2 * dd, "q0_" + std::to_string(dd)});
    for (int dd : {1, 2, 3})
        for (int sg : {1, -1})
            catalog.push_back({QSignBlock{dd, sg}, 2 * dd,
                               std::string(sg > 0 ? "qsignp" : "qsignm") + std::to_string(dd)});

    VerificationReport rep;
    rep.tool_version = kToolVersion;
    Recorder rec(rep);
    int cases = 0;

    std::vector<std::size_t> chosen;
    std::function<void(std::size_t, int)> walk = [&](std::size_t from, int dim_left) {
        if (!chosen.empty()) {
            PathSpec spec;
            std::string label;
            for (std::size_t idx : chosen) {
                spec.blocks.push_back(catalog[idx].block);
                label += (label.empty() ? "" : "+") + catalog[idx].label;
            }
            ++cases;
            rec.exact("beta_minus_equals_split[" + label + "]", kCore,
                      [&] {
                          BetaMinusReport r = beta_minus_check(spec, cfg);
                          if (!r.pass)
                              throw NumericalFailure(
                                  "route disagreement: table (" + std::to_string(r.s_minus_table) +
                                  "," + std::to_string(r.s_plus_table) + ") probe (" +
                                  std::to_string(r.s_minus_numeric) + "," +
                                  std::to_string(r.s_plus_numeric) + ")");
                          return static_cast<std::int64_t>(r.inv.beta_minus());
                      },
                      [&] { return splitting_numbers(spec, Angle::exact_pi(0, 1), cfg).minus; });
            rec.exact("beta_sum_nullity[" + label + "]", kCore,
                      [&] {
                          AGInvariants inv = invariants_of(spec);
                          return static_cast<std::int64_t>(inv.beta_plus() + inv.beta_minus());
                      },
                      [&] {
                          return index_at_iterate(spec, 1, cfg).nu;
                      });
        }
        for (std::size_t i = from; i < catalog.size(); ++i)
            if (catalog[i].dim <= dim_left) {
                chosen.push_back(i);
                walk(i, dim_left - catalog[i].dim);
                chosen.pop_back();
            }
    };
    walk(0, dim_bound);
    rep.notes.push_back("enumerated " + std::to_string(cases) +
                        " block multisets with total dimension <= " + std::to_string(dim_bound));
    return rep;
}

std::vector<PathSpec> make_random_collection(std::uint64_t seed, int q, const Config& cfg,
                                             bool with_generic) {
    if (q < 1) throw ValidationError("make_random_collection: q must be >= 1");
    std::mt19937_64 rng(seed);
    auto pick = [&](std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    };
    auto unit = [&] { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); };

    // Irrational angles thin out the windowed scan, so their number is kept
    // where three certificates stay reachable within the default n_max:
    // at most one in a mixed collection, at most two when q == 1.
    int irr_budget = q == 1 ? 2 : 1;
    int irr_spec = -1;
    const double irr_pool[3] = {1.0, std::sqrt(2.0), std::sqrt(5.0)};

    auto random_exact_angle = [&] {
        static const int dens[5] = {1, 2, 3, 4, 6};
        int den = dens[pick(0, 4)];
        std::int64_t num = pick(1, 2 * den - 1);
        return Angle::exact_pi(num, den);
    };
    auto random_rotation = [&](int spec_index) {
        if (irr_budget > 0 && (irr_spec < 0 || irr_spec == spec_index) && unit() < 0.25) {
            --irr_budget;
            irr_spec = spec_index;
            return RotationBlock{Angle::from_radians(irr_pool[pick(0, 2)], cfg)};
        }
        return RotationBlock{random_exact_angle()};
    };
    auto random_sp2 = [&] {
        double p1 = unit() * 6.283185307179586;
        double p2 = unit() * 6.283185307179586;
        double h = (unit() - 0.5);
        Mat r1(2, 2), r2(2, 2), dg(2, 2);
        r1 << std::cos(p1), -std::sin(p1), std::sin(p1), std::cos(p1);
        r2 << std::cos(p2), -std::sin(p2), std::sin(p2), std::cos(p2);
        dg << std::exp(h), 0.0, 0.0, std::exp(-h);
        return Mat(r1 * dg * r2);
    };

    std::vector<PathSpec> specs;
    for (int s = 0; s < q; ++s) {
        PathSpec spec;
        std::int64_t nb = pick(1, 3);
        bool has_rotation = false;
        for (std::int64_t b = 0; b < nb; ++b) {
            switch (pick(0, with_generic ? 5 : 4)) {
            case 0: spec.blocks.push_back(ZeroForm{static_cast<int>(pick(1, 2))}); break;
            case 1: spec.blocks.push_back(Q0Block{static_cast<int>(2 * pick(0, 2) + 1)}); break;
            case 2:
                spec.blocks.push_back(
                    QSignBlock{static_cast<int>(pick(1, 3)), pick(0, 1) == 0 ? 1 : -1});
                break;
            case 3:
                spec.blocks.push_back(random_rotation(s));
                has_rotation = true;
                break;
            case 4: {
                // |a| stays small enough that iterates up to ~20 of the end
                // matrix keep 1 clearly separated from the real spectrum at
                // the relative rank cutoff (e^{-|a| m} well above tol_rank).
                double a = 0.25 + 1.0 * unit();
                spec.blocks.push_back(HyperbolicBlock{pick(0, 1) == 0 ? a : -a});
                break;
            }
            default: {
                // Conjugated planar block: same path up to a symplectic
                // change of frame, exercised through the generic engine.
                BlockSpec inner = pick(0, 1) == 0
                                      ? BlockSpec{RotationBlock{random_exact_angle()}}
                                      : BlockSpec{HyperbolicBlock{0.4 + 0.6 * unit()}};
                Mat B = generator_matrix(inner);
                Mat g = random_sp2();
                Mat gi = g.inverse();
                Mat Q = gi.transpose() * B * gi;
                spec.blocks.push_back(GenericBlock{Mat(0.5 * (Q + Q.transpose()))});
                break;
            }
            }
        }
        if (!has_rotation) {
            spec.blocks.push_back(random_rotation(s));
        }
        validate(spec, cfg);
        specs.push_back(std::move(spec));
    }
    return specs;
}

} // namespace sympath
