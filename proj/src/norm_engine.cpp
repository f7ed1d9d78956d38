#include "orlicz/norm_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace orlicz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

// x split into its finite-atom part (for the modular sum) and the scale limit
// imposed by infinite atoms.
struct Split {
    std::vector<long double> weights;
    std::vector<double> values;
    double inf_sup = 0; // max |x| over infinite atoms
};

Split split(const SimpleFunction &x) {
    Split s;
    const auto &space = *x.space();
    for (std::size_t i = 0; i < x.size(); ++i) {
        double v = std::abs(x[i]);
        if (v == 0)
            continue;
        if (space.is_infinite(i)) {
            s.inf_sup = std::max(s.inf_sup, v);
        } else {
            s.weights.push_back(space.weight(i));
            s.values.push_back(v);
        }
    }
    return s;
}

// Sum over finite atoms of w Phi(scale * v), saturating to +inf.
double finite_modular(const OrliczFunction &phi, const Split &s, double scale) {
    long double sum = 0;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        long double term = phi.wide(static_cast<long double>(scale) * s.values[i]);
        if (term == 0)
            continue;
        sum += s.weights[i] * term;
        if (!std::isfinite(sum))
            return kInf;
    }
    double out = static_cast<double>(sum);
    return std::isfinite(out) ? out : kInf;
}

// Largest k with I_Phi over infinite atoms of kx equal to zero.
double infinite_atom_cap(const OrliczFunction &phi, const Split &s) {
    if (s.inf_sup == 0)
        return kInf;
    return phi.zero_bound() / s.inf_sup;
}

class Objective {
  public:
    Objective(const OrliczFunction &phi, const PlanarNorm &p, const SimpleFunction &x)
        : phi_{phi}, p_{p}, split_{split(x)}, cap_{infinite_atom_cap(phi, split_)} {}

    double cap() const { return cap_; }
    std::size_t evaluations() const { return evaluations_; }

    double operator()(double k) {
        ++evaluations_;
        if (!(k > 0))
            throw std::domain_error("generated_norm: k must be positive");
        if (k > cap_)
            return kInf;
        double m = finite_modular(phi_, split_, k);
        if (!std::isfinite(m))
            return kInf;
        double g = p_(1.0, m) / k;
        return std::isfinite(g) ? g : kInf;
    }

  private:
    const OrliczFunction &phi_;
    const PlanarNorm &p_;
    Split split_;
    double cap_;
    std::size_t evaluations_ = 0;
};

} // namespace

ExtendedReal luxemburg_norm(const OrliczFunction &phi, const SimpleFunction &x, double rel_tol) {
    if (x.is_zero())
        return ExtendedReal{0.0};
    Split s = split(x);
    double lambda_min = 0;
    if (s.inf_sup > 0) {
        if (phi.zero_bound() == 0)
            return ExtendedReal::infinity();
        lambda_min = s.inf_sup / phi.zero_bound();
    }
    auto feasible = [&](double lambda) { return finite_modular(phi, s, 1.0 / lambda) <= 1.0; };
    if (s.values.empty() || (lambda_min > 0 && feasible(lambda_min)))
        return ExtendedReal{lambda_min};

    double hi = std::max(lambda_min, x.sup_abs());
    while (!feasible(hi))
        hi *= 2;
    double lo = hi;
    do {
        lo /= 2;
    } while (lo > lambda_min && feasible(lo));
    lo = std::max(lo, lambda_min);
    // Invariant: lo infeasible, hi feasible.
    for (int it = 0; it < 200 && hi - lo > rel_tol * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (feasible(mid) ? hi : lo) = mid;
    }
    return ExtendedReal{hi};
}

NormResult generated_norm(const OrliczFunction &phi, const PlanarNorm &p, const SimpleFunction &x,
                          const NormSearch &search) {
    NormResult result;
    if (x.is_zero())
        return result;

    Objective g{phi, p, x};
    const double limit = std::min(search.k_cap, g.cap());
    if (limit <= 0) {
        // Nonzero on an infinite atom with a(Phi) = 0.
        result.value = kInf;
        result.evaluations = g.evaluations();
        return result;
    }

    double k = std::min(1.0, limit);
    double gk = g(k);
    while (!std::isfinite(gk) && k / 2 >= search.k_floor) {
        k /= 2;
        gk = g(k);
    }
    if (!std::isfinite(gk)) {
        result.value = kInf;
        result.evaluations = g.evaluations();
        return result;
    }

    // Move by factors of two while g strictly decreases.
    double down = (k / 2 >= search.k_floor) ? g(k / 2) : kInf;
    if (down < gk) {
        while (k / 2 >= search.k_floor && down < gk) {
            k /= 2;
            gk = down;
            down = (k / 2 >= search.k_floor) ? g(k / 2) : kInf;
        }
    } else {
        double up = (2 * k <= limit) ? g(2 * k) : kInf;
        while (up < gk) {
            k *= 2;
            gk = up;
            up = (2 * k <= limit) ? g(2 * k) : kInf;
        }
    }
    double lo = std::max(k / 2, search.k_floor);
    double hi = std::min(2 * k, limit);
    result.bracket = {lo, hi};

    double best_k = k;
    double best = gk;
    auto consider = [&](double kk, double gv) {
        if (gv < best) {
            best = gv;
            best_k = kk;
        }
    };

    double a = std::log(lo);
    double b = std::log(hi);
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double gc = g(std::exp(c));
    double gd = g(std::exp(d));
    while (b - a > search.rel_tol) {
        // Ties (including two infinities) move toward small k, where g is finite.
        if (gc <= gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - kGolden * (b - a);
            gc = g(std::exp(c));
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + kGolden * (b - a);
            gd = g(std::exp(d));
        }
    }
    consider(std::exp(c), gc);
    consider(std::exp(d), gd);
    // The domain end is evaluated exactly: the minimum often sits on it.
    consider(hi, g(hi));
    consider(lo, g(lo));

    result.value = best;
    result.k_star = best_k;
    result.attained = !(limit == search.k_cap && best_k >= search.k_cap * (1 - 1e-9));
    result.evaluations = g.evaluations();
    return result;
}

double norm_value(const OrliczFunction &phi, const PlanarNorm &p, const SimpleFunction &x) {
    return generated_norm(phi, p, x).value;
}

double amemiya_objective(const OrliczFunction &phi, const PlanarNorm &p, const SimpleFunction &x,
                         double k) {
    Objective g{phi, p, x};
    return g(k);
}

namespace {

// Largest y >= 0 with Phi*(y) <= t, via the exact identity
//   sup{y : Phi*(y) <= t} = inf_{u>0} (t + Phi(u)) / u,
// which follows from Phi*(y) <= t iff y u - Phi(u) <= t for all u. The
// objective is convex in 1/u, so a golden-section search on log u suffices.
class ConjugateInverse {
  public:
    explicit ConjugateInverse(const OrliczFunction &phi) : phi_{phi} {}

    double operator()(double t) const {
        auto h = [&](double log_u) {
            const long double u = std::exp(static_cast<long double>(log_u));
            const long double v = (t + phi_.wide(u)) / u;
            return std::isfinite(v) ? static_cast<double>(v) : kInf;
        };
        constexpr double lo_limit = -28 * 2.302585092994046; // 1e-28
        constexpr double hi_limit = 28 * 2.302585092994046;
        double c = 0;
        double hc = h(c);
        const double step = std::log(2.0);
        if (h(c - step) < hc) {
            while (c - step >= lo_limit && h(c - step) < hc) {
                c -= step;
                hc = h(c);
            }
        } else {
            while (c + step <= hi_limit && h(c + step) < hc) {
                c += step;
                hc = h(c);
            }
        }
        double a = std::max(c - step, lo_limit);
        double b = std::min(c + step, hi_limit);
        double best = std::min({hc, h(a), h(b)});
        double x1 = b - kGolden * (b - a);
        double x2 = a + kGolden * (b - a);
        double f1 = h(x1);
        double f2 = h(x2);
        while (b - a > 1e-13) {
            if (f1 <= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - kGolden * (b - a);
                f1 = h(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + kGolden * (b - a);
                f2 = h(x2);
            }
        }
        return std::min({best, f1, f2});
    }

  private:
    const OrliczFunction &phi_;
};

} // namespace

DualNormResult orlicz_dual_norm(const OrliczFunction &phi, const SimpleFunction &x,
                                const DualSearch &search) {
    if (x.touches_infinite_atom())
        throw PreconditionError("orlicz_dual_norm: x must vanish on infinite atoms");
    const auto &space = x.space();
    std::vector<std::size_t> atoms;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0)
            atoms.push_back(i);
    if (atoms.empty())
        return {0.0, SimpleFunction{space}, 0};

    ConjugateInverse inverse{phi};
    const std::size_t n = atoms.size();
    std::vector<double> c(n), w(n), budget(n), y(n);
    double total_c = 0;
    for (std::size_t j = 0; j < n; ++j) {
        w[j] = static_cast<double>(space->weight(atoms[j]));
        c[j] = w[j] * std::abs(x[atoms[j]]);
        total_c += c[j];
    }
    for (std::size_t j = 0; j < n; ++j) {
        budget[j] = c[j] / total_c;
        y[j] = inverse(budget[j] / w[j]);
    }
    auto value = [&] {
        double s = 0;
        for (std::size_t j = 0; j < n; ++j)
            s += c[j] * y[j];
        return s;
    };

    std::size_t sweeps = 0;
    double current = value();
    while (n > 1 && sweeps < search.max_sweeps) {
        ++sweeps;
        const double before = current;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double pool = budget[i] + budget[j];
                auto pair_value = [&](double bi) {
                    double yi = inverse(bi / w[i]);
                    double yj = inverse(std::max(0.0, pool - bi) / w[j]);
                    return c[i] * yi + c[j] * yj;
                };
                double a = 0;
                double b = pool;
                double u = b - kGolden * (b - a);
                double v = a + kGolden * (b - a);
                double fu = pair_value(u);
                double fv = pair_value(v);
                while (b - a > 1e-12 * std::max(pool, 1e-300)) {
                    if (fu >= fv) {
                        b = v;
                        v = u;
                        fv = fu;
                        u = b - kGolden * (b - a);
                        fu = pair_value(u);
                    } else {
                        a = u;
                        u = v;
                        fu = fv;
                        v = a + kGolden * (b - a);
                        fv = pair_value(v);
                    }
                }
                double bi = (fu >= fv) ? u : v;
                double candidate = std::max(fu, fv);
                double old_pair = c[i] * y[i] + c[j] * y[j];
                if (candidate > old_pair) {
                    budget[i] = bi;
                    budget[j] = std::max(0.0, pool - bi);
                    y[i] = inverse(budget[i] / w[i]);
                    y[j] = inverse(budget[j] / w[j]);
                }
            }
        }
        current = value();
        if (current - before <= search.tol * std::max(current, 1.0))
            break;
    }

    // Certify against the numeric conjugate; by convexity of Phi* with
    // Phi*(0) = 0, dividing y by its dual modular m > 1 restores feasibility.
    long double dual_modular = 0;
    for (std::size_t j = 0; j < n; ++j)
        dual_modular += w[j] * young_conjugate(phi, y[j], search.conjugate).as_double();
    const double shrink = dual_modular > 1 ? static_cast<double>(dual_modular) : 1.0;
    std::vector<double> cert(x.size(), 0.0);
    for (std::size_t j = 0; j < n; ++j)
        cert[atoms[j]] = std::copysign(y[j] / shrink, x[atoms[j]]);
    return {current / shrink, SimpleFunction{space, std::move(cert)}, sweeps};
}

LemmaBounds lemma_bounds_check(const OrliczFunction &phi, const PlanarNorm &p,
                               const SimpleFunction &x) {
    ExtendedReal m = modular(phi, x);
    if (m.is_infinite())
        throw PreconditionError("lemma_bounds_check: I_Phi(x) must be finite");
    if (modular(phi, x.scaled(1 + 1e-6)).is_finite())
        throw PreconditionError("lemma_bounds_check: I_Phi(lambda x) must be +inf for lambda > 1");
    double norm = generated_norm(phi, p, x).value;
    constexpr double tol = 1e-9;
    return {norm >= 1 - tol, norm <= 1 + m.value() + tol, norm, m.value()};
}

} // namespace orlicz
