#pragma once

// Sweeps over (parameter, element) pairs with deterministic CSV output.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "scchar/characters.hpp"
#include "scchar/cli/config.hpp"

namespace scchar::cli {

inline constexpr int kSchemaVersion = 1;

inline std::string fmt_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

/// Exact when rational, 12 significant digits otherwise.
inline std::string fmt_qpower(const QPower& x) {
    const Surd s = x.to_surd();
    return s.is_rational() ? format_rational(s.rational_part()) : fmt_real(s.to_double());
}

/// splitmix64 finalizer, used to derive per-sample seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t sample_seed(std::uint64_t seed, std::int64_t p, std::size_t cls, int d2, int sample) {
    std::uint64_t s = mix_seed(seed);
    s = mix_seed(s ^ static_cast<std::uint64_t>(p));
    s = mix_seed(s ^ cls);
    s = mix_seed(s ^ static_cast<std::uint64_t>(d2 + 1000));
    return mix_seed(s ^ static_cast<std::uint64_t>(sample));
}

struct GammaRep {
    int id = 0;
    TorusElement gamma;
    DepthData depth;
};

inline std::vector<TorusClass> selected_classes(const SweepConfig& c, const FieldContext& ctx) {
    const auto legal = legal_classes(ctx);
    if (c.classes.empty()) return legal;
    std::vector<TorusClass> out;
    for (const auto& cls : legal)
        for (const auto& name : c.classes)
            if (parse_class(name) == cls) out.push_back(cls);
    return out;
}

/// Random elements per (class, depth) with |d_plus| <= gamma_depth_max,
/// each followed by its negative. Split classes also get non-compact
/// elements when `noncompact` is set.
inline std::vector<GammaRep> gamma_representatives(const SweepConfig& c, const FieldContext& ctx) {
    std::vector<GammaRep> out;
    const auto classes = selected_classes(c, ctx);
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        const TorusClass& cls = classes[ci];
        const int lo = cls.is_split() && c.noncompact ? -c.gamma_depth_max2 : 0;
        for (int d2 = lo; d2 <= c.gamma_depth_max2; ++d2) {
            for (int s = 0; s < c.gamma_samples; ++s) {
                try {
                    TorusElement g = random_element(ctx, cls, d2, sample_seed(c.seed, ctx.p(), ci, d2, s));
                    DepthData dd = depth_data(g);
                    if (std::abs(dd.d_plus2) > c.gamma_depth_max2) continue;
                    TorusElement neg = g.negated();
                    DepthData ndd = depth_data(neg);
                    out.push_back({static_cast<int>(out.size()), std::move(g), dd});
                    out.push_back({static_cast<int>(out.size()), std::move(neg), ndd});
                } catch (const NoSuchElement&) {
                    break;
                } catch (const NotRegular&) {
                    continue;
                }
            }
        }
    }
    return out;
}

struct SweepRow {
    std::int64_t p = 0;
    const SupercuspidalParameter* param = nullptr;
    const GammaRep* gamma = nullptr;
    CharacterValue value;
    QPower deg;
    QPower discriminant;
    double lhs = 0;
    double rhs = 0;
    double ratio = 0;
    bool pass = true;
};

inline const char* kSweepHeader =
    "p,theta,eta,kind,sign,r,gamma_id,gamma_class,d,d_minus,d_plus,sd,D,value_kind,normalized_value,deg,lhs,rhs,ratio,pass";

inline void write_row(std::ostream& os, const SweepRow& row) {
    const auto& pa = *row.param;
    const auto& g = *row.gamma;
    os << row.p << ',' << to_string(*pa.cls.theta) << ',' << to_string(pa.cls.eta) << ',' << to_string(pa.kind) << ','
       << (pa.sign > 0 ? '+' : '-') << ',' << format_half(pa.r2()) << ',' << g.id << ',' << g.gamma.torus_class().label()
       << ',' << format_half(g.depth.d2) << ',' << format_half(g.depth.d_minus2) << ',' << format_half(g.depth.d_plus2) << ','
       << format_half(g.depth.sd2) << ',' << fmt_qpower(row.discriminant) << ',' << to_string(row.value.kind) << ','
       << fmt_real(row.value.normalized) << ',' << fmt_qpower(row.deg) << ',' << fmt_real(row.lhs) << ','
       << fmt_real(row.rhs) << ',' << fmt_real(row.ratio) << ',' << (row.pass ? 1 : 0) << '\n';
}

struct SweepSummary {
    std::int64_t rows = 0;
    std::int64_t failures = 0;
    std::int64_t exact = 0;
    std::int64_t bounds = 0;
    std::int64_t zeros = 0;
    std::int64_t parameters = 0;
    std::int64_t elements = 0;
    double worst_margin = -std::numeric_limits<double>::infinity();  // max of lhs - rhs
};

using RowHook = std::function<void(const SweepRow&)>;

/// Checks D^{1/2}|Theta| <= 2 + D^{1/2} on every pair; rows
/// are streamed to `csv` (when non-null) in canonical order.
inline SweepSummary sweep_bound(const SweepConfig& c, std::ostream* csv, const RowHook& hook = {}) {
    validate(c);
    SweepSummary sum;
    if (csv) *csv << "schema_version," << kSchemaVersion << '\n' << kSweepHeader << '\n';
    for (std::int64_t p : c.primes) {
        const FieldContext ctx(p, precision_for(c));
        QuotientCache cache;
        const LegendreTable chi = legendre_table(p);
        const auto gammas = gamma_representatives(c, ctx);
        sum.elements += static_cast<std::int64_t>(gammas.size());
        std::vector<QPower> disc;
        for (const auto& g : gammas) disc.push_back(weyl_discriminant(g.gamma));

        for (const auto& cls : selected_classes(c, ctx)) {
            if (!cls.is_elliptic()) continue;
            for (int r2 = c.r_min2; r2 <= c.r_max2; ++r2) {
                const auto params = enumerate_parameters(cache, ctx, cls, r2, c.dedupe_inverse);
                sum.parameters += static_cast<std::int64_t>(params.size());
                for (const auto& pa : params) {
                    const QPower deg = formal_degree(pa);
                    const double degd = deg.to_double();
                    for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
                        const auto& g = gammas[gi];
                        SweepRow row;
                        row.p = p;
                        row.param = &pa;
                        row.gamma = &g;
                        try {
                            row.value = character_abs(pa, g.gamma, g.depth, chi);
                        } catch (const Error& e) {
                            throw Error(std::string(e.what()) + " (parameter " + cls.label() + " r=" + format_half(r2) + " phi=" +
                                        pa.phi.str() + ", element " + std::to_string(g.id) + " " + g.gamma.str() + ")");
                        }
                        row.deg = deg;
                        row.discriminant = disc[gi];
                        row.lhs = row.value.normalized;
                        row.rhs = 2.0 + row.value.sqrt_discriminant.to_double();
                        row.ratio = row.value.raw / degd;
                        row.pass = std::isfinite(row.lhs) && row.lhs <= row.rhs + c.tol;
                        ++sum.rows;
                        if (!row.pass) ++sum.failures;
                        switch (row.value.kind) {
                            case ValueKind::exact: ++sum.exact; break;
                            case ValueKind::upper_bound: ++sum.bounds; break;
                            case ValueKind::zero: ++sum.zeros; break;
                        }
                        sum.worst_margin = std::max(sum.worst_margin, row.lhs - row.rhs);
                        if (csv) write_row(*csv, row);
                        if (hook) hook(row);
                    }
                }
            }
        }
    }
    return sum;
}

struct AsymptoticPoint {
    int r2 = 0;
    QPower deg;
    double max_ratio = 0;
    ValueKind kind = ValueKind::zero;
    std::int64_t parameters = 0;
};

struct AsymptoticReport {
    std::int64_t p = 0;
    std::string gamma_class;
    DepthData depth;
    std::string family;
    std::vector<AsymptoticPoint> points;
    double slope = std::numeric_limits<double>::quiet_NaN();  // fitted d log_q(ratio) / dr
    std::string warning;

    bool strictly_decreasing() const {
        for (std::size_t i = 1; i < points.size(); ++i)
            if (!(points[i].max_ratio < points[i - 1].max_ratio)) return false;
        return true;
    }
};

/// Max over the parameter family matching gamma's torus of |Theta|/deg, for
/// r from 2 sd(gamma) + 1 up to r_max2 / 2.
inline AsymptoticReport asymptotics(const FieldContext& ctx, QuotientCache& cache, const TorusElement& gamma, int r_max2,
                                    bool dedupe_inverse = true) {
    AsymptoticReport rep;
    rep.p = ctx.p();
    rep.gamma_class = gamma.torus_class().label();
    rep.depth = depth_data(gamma);
    const TorusClass& gc = gamma.torus_class();
    if (!gc.is_elliptic()) {
        rep.warning = "asymptotics needs an elliptic element";
        return rep;
    }
    const bool unram = gc.is_unramified();
    rep.family = unram ? "unramified" : "ramified";
    const int start2 = 2 * rep.depth.sd2 + 2;
    if (r_max2 < start2) {
        rep.warning = "r_max " + format_half(r_max2) + " is below 2 sd + 1 = " + format_half(start2);
        return rep;
    }
    std::vector<TorusClass> family;
    for (const auto& cls : elliptic_classes(ctx))
        if (cls.is_unramified() == unram) family.push_back(cls);
    const LegendreTable chi = legendre_table(ctx.p());

    for (int r2 = start2; r2 <= r_max2; ++r2) {
        if ((r2 % 2 == 0) != unram) continue;  // family depths: integers / half-odd
        AsymptoticPoint pt;
        pt.r2 = r2;
        pt.deg = formal_degree(unram ? ParameterKind::unramified : ParameterKind::ramified, ctx.q(), r2);
        for (const auto& cls : family)
            for (const auto& pa : enumerate_parameters(cache, ctx, cls, r2, dedupe_inverse)) {
                ++pt.parameters;
                const auto cv = character_abs(pa, gamma, rep.depth, chi);
                const auto ratio = conjecture_ratio(pa, cv);
                if (ratio.value > pt.max_ratio) {
                    pt.max_ratio = ratio.value;
                    pt.kind = ratio.kind;
                }
            }
        rep.points.push_back(pt);
    }

    // least-squares slope of log_q(ratio) against r
    const double lq = std::log(static_cast<double>(ctx.q()));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (const auto& pt : rep.points) {
        if (!(pt.max_ratio > 0)) continue;
        const double x = pt.r2 / 2.0, y = std::log(pt.max_ratio) / lq;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n >= 2) rep.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return rep;
}

inline const char* kAsymptoticsHeader = "p,gamma_class,d_plus,sd,family,r,deg,max_ratio,value_kind,parameters";

inline void write_asymptotics(std::ostream& os, const AsymptoticReport& rep) {
    for (const auto& pt : rep.points)
        os << rep.p << ',' << rep.gamma_class << ',' << format_half(rep.depth.d_plus2) << ',' << format_half(rep.depth.sd2)
           << ',' << rep.family << ',' << format_half(pt.r2) << ',' << fmt_qpower(pt.deg) << ',' << fmt_real(pt.max_ratio)
           << ',' << to_string(pt.kind) << ',' << pt.parameters << '\n';
}

}  // namespace scchar::cli
