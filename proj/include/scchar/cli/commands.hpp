#pragma once

// Command implementations behind the scchar executable. Each returns the
// process exit status: 0 on success, 1 if any verified inequality fails,
// 2 on configuration or precondition errors.

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "scchar/characters.hpp"
#include "scchar/cli/config.hpp"
#include "scchar/cli/sweep.hpp"
#include "scchar/filtration.hpp"
#include "scchar/rootdata.hpp"

namespace scchar::cli {

/// Output stream for `path` ("" or "-" means `fallback`).
class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback) {
        if (path.empty() || path == "-") {
            os_ = &fallback;
        } else {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw ConfigError("cannot open output file '" + path + "'");
            os_ = file_.get();
        }
    }
    std::ostream& stream() { return *os_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_ = nullptr;
};

inline int cmd_sweep_bound(const SweepConfig& c, std::ostream& out, std::ostream& log) {
    OutputTarget target(c.out, out);
    const SweepSummary s = sweep_bound(c, &target.stream());
    target.stream().flush();
    log << "rows=" << s.rows << " parameters=" << s.parameters << " elements=" << s.elements << " exact=" << s.exact
        << " upper_bound=" << s.bounds << " zero=" << s.zeros << " failures=" << s.failures
        << " worst_margin=" << fmt_real(s.worst_margin) << '\n';
    return s.failures == 0 ? 0 : 1;
}

inline int cmd_asymptotics(const SweepConfig& c, std::ostream& out, std::ostream& log) {
    validate(c);
    OutputTarget target(c.out, out);
    auto& os = target.stream();
    os << "schema_version," << kSchemaVersion << '\n' << kAsymptoticsHeader << '\n';
    const TorusClass cls = parse_class(c.gamma_class);
    for (std::int64_t p : c.primes) {
        const FieldContext ctx(p, precision_for(c, c.r_max2));
        QuotientCache cache;
        const TorusElement g = random_element(ctx, cls, c.gamma_depth2, sample_seed(c.seed, p, 0, c.gamma_depth2, 0));
        const AsymptoticReport rep = asymptotics(ctx, cache, g, c.r_max2, c.dedupe_inverse);
        write_asymptotics(os, rep);
        if (!rep.warning.empty()) log << "warning: p=" << p << ": " << rep.warning << '\n';
        log << "p=" << p << " gamma_class=" << rep.gamma_class << " d_plus=" << format_half(rep.depth.d_plus2)
            << " points=" << rep.points.size() << " strictly_decreasing=" << (rep.strictly_decreasing() ? 1 : 0)
            << " slope=" << fmt_real(rep.slope) << '\n';
    }
    return 0;
}

inline const char* kKappaHeader = "type,rank,dim,num_positive,h_G,r_G,kappa,A,flags";

inline int cmd_kappa_table(const SweepConfig& c, std::ostream& out, std::ostream& log) {
    OutputTarget target(c.out, out);
    auto& os = target.stream();
    os << "schema_version," << kSchemaVersion << '\n' << kKappaHeader << '\n';
    for (const auto& t : c.types) {
        try {
            const RootSystem rs = parse_root_system(t);
            const BoundConstants bc = kappa(rs);
            os << rs.name() << ',' << rs.rank << ',' << rs.dim() << ',' << rs.num_positive() << ',' << bc.h_G << ','
               << bc.r_G << ',' << format_rational(bc.kappa) << ',' << bc.A << ',' << bc.flags() << '\n';
        } catch (const DomainError& e) {
            log << "skipped " << t << ": " << e.what() << '\n';
        }
    }
    return 0;
}

struct CheckResult {
    std::string name;
    std::int64_t p = 0;
    std::int64_t cases = 0;
    std::int64_t failures = 0;
    std::string detail{};
    bool passed() const { return failures == 0 && cases > 0; }
};

/// A Legendre table with every nonzero residue mapped to +1.
inline LegendreTable wrong_legendre_table(std::int64_t p) {
    LegendreTable t(static_cast<std::size_t>(p), 1);
    t[0] = 0;
    return t;
}

/// Shell elements 1 + p^j Y sqrt(theta) + ... for Y in F_q^x, with a second
/// lift varying the next digit.
inline std::vector<TorusElement> shell_elements(const FieldContext& ctx, ThetaLabel t, int r2) {
    std::vector<TorusElement> out;
    const int j = (r2 - 1) / 2;
    const TorusClass cls = TorusClass::elliptic(t, EtaLabel::one);
    for (std::int64_t y = 1; y < ctx.p(); ++y)
        for (std::int64_t hi : {std::int64_t{0}, y})
            out.push_back(TorusElement::elliptic(cls, lift_norm_one(ctx, t, true, ctx.power(j) * (y + ctx.p() * hi), 1)));
    return out;
}

inline CheckResult check_expsum(std::int64_t p, const LegendreTable& chi, double tol, int r_max2 = 4) {
    CheckResult res{"expsum", p};
    const FieldContext ctx(p, r_max2 + 6);
    QuotientCache cache;
    double worst = 0;
    for (ThetaLabel t : {ThetaLabel::pi, ThetaLabel::eps_pi})
        for (int r2 = 1; r2 <= r_max2; r2 += 2) {
            const auto q = cache.get(ctx, t, r2);
            const auto shell = shell_elements(ctx, t, r2);
            for (const auto& phi : enumerate_characters(q, true))
                for (const auto& g : shell) {
                    const double dev = std::abs(std::abs(ramified_exp_sum(phi, g, chi)) - 0.5);
                    worst = std::max(worst, dev);
                    ++res.cases;
                    if (dev > tol) ++res.failures;
                }
        }
    res.detail = "max||A|-1/2|=" + fmt_real(worst);
    return res;
}

inline CheckResult check_gauss(std::int64_t p, double tol) {
    CheckResult res{"gauss", p};
    double worst = 0;
    for (std::int64_t k = 1; k < p - 1; ++k)
        for (std::int64_t t = 1; t < p; ++t) {
            const double dev = std::abs(std::abs(gauss_sum(multiplicative_character(p, k), additive_character(p, t))) -
                                        std::sqrt(static_cast<double>(p)));
            worst = std::max(worst, dev);
            ++res.cases;
            if (dev > tol) ++res.failures;
        }
    res.detail = "max||G|-sqrt(q)|=" + fmt_real(worst);
    return res;
}

/// Depth formula against the adjoint determinant on random elements of
/// every class and depth up to `depth_max2`.
inline CheckResult check_discriminant(std::int64_t p, std::uint64_t seed, int per_depth, int depth_max2 = 8) {
    CheckResult res{"discriminant", p};
    const FieldContext ctx(p, depth_max2 + 8);
    const auto classes = legal_classes(ctx);
    for (std::size_t ci = 0; ci < classes.size(); ++ci)
        for (int d2 = classes[ci].is_split() ? -depth_max2 : 0; d2 <= depth_max2; ++d2)
            for (int s = 0; s < per_depth; ++s) {
                TorusElement g = TorusElement::split(PadicScalar::from_integer(ctx, 2));
                try {
                    g = random_element(ctx, classes[ci], d2, sample_seed(seed, p, ci, d2, s));
                } catch (const NoSuchElement&) {
                    break;
                }
                ++res.cases;
                if (!(discriminant_from_depth(p, depth_data(g)).to_surd() == adjoint_discriminant(g).to_surd())) ++res.failures;
            }
    res.detail = "samples=" + std::to_string(res.cases);
    return res;
}

inline const std::vector<Rational>& inequality_grid() {
    static const std::vector<Rational> grid = {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(3)};
    return grid;
}

inline CheckResult check_filtration() {
    CheckResult res{"filtration", 0};
    for (const char* name : {"A1", "A2", "C2"}) {
        const RootSystem rs = parse_root_system(name);
        for (const auto& x : {vertex_point(rs), barycenter_point(rs)})
            for (const auto& levi : standard_levis(rs))
                for (const auto& ap : inequality_grid())
                    for (const auto& a : inequality_grid()) {
                        if (a < ap) continue;
                        ++res.cases;
                        if (!check_index_inequalities(rs, levi, x, ap, a).all_hold()) ++res.failures;
                    }
    }
    res.detail = "grid points=" + std::to_string(res.cases);
    return res;
}

inline CheckResult check_degree_sandwich(std::int64_t p, int r_max2) {
    CheckResult res{"degree-sandwich", p};
    for (auto kind : {ParameterKind::unramified, ParameterKind::ramified, ParameterKind::exceptional})
        for (int r2 = 0; r2 <= r_max2; ++r2) {
            if (kind == ParameterKind::exceptional && r2 != 0) continue;
            if (kind == ParameterKind::unramified && r2 % 2 != 0) continue;
            if (kind == ParameterKind::ramified && r2 % 2 != 1) continue;
            ++res.cases;
            if (!degree_sandwich(kind, p, r2).holds()) ++res.failures;
        }
    return res;
}

inline void print_check(std::ostream& os, const CheckResult& r) {
    os << "check=" << r.name << " p=" << r.p << " cases=" << r.cases << " failures=" << r.failures
       << " status=" << (r.passed() ? "PASS" : "FAIL");
    if (!r.detail.empty()) os << ' ' << r.detail;
    os << '\n';
}

inline std::vector<CheckResult> run_checks(const SweepConfig& c) {
    validate(c);
    std::vector<CheckResult> out;
    for (std::int64_t p : c.primes) {
        const LegendreTable chi = c.inject_fault == "wrong-legendre" ? wrong_legendre_table(p) : legendre_table(p);
        out.push_back(check_expsum(p, chi, c.tol));
        out.push_back(check_gauss(p, c.tol));
        out.push_back(check_discriminant(p, c.seed, 150));
        out.push_back(check_degree_sandwich(p, 6));
    }
    out.push_back(check_filtration());
    return out;
}

inline int cmd_checks(const SweepConfig& c, std::ostream& out, std::ostream& /*log*/) {
    OutputTarget target(c.out, out);
    bool ok = true;
    for (const auto& r : run_checks(c)) {
        print_check(target.stream(), r);
        ok = ok && r.passed();
    }
    return ok ? 0 : 1;
}

}  // namespace scchar::cli
