#include "zgkn/spectrum.hpp"
#include "zgkn/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <thread>

namespace zgkn::spectrum {

namespace {

constexpr double pi = std::numbers::pi;

double round_to_2pi(double x) { return 2 * pi * std::round(x / (2 * pi)); }

void validate_kappa(double kappa, bool allow_integer) {
    double two_k = 2 * kappa;
    double nearest = std::round(two_k);
    if (kappa == 0 || std::abs(two_k - nearest) > 1e-12 || nearest == 0)
        throw InvalidQuantumNumbers("kappa must be a nonzero half-integer");
    bool half_odd = std::abs(std::fmod(std::abs(nearest), 2.0) - 1.0) < 1e-12;
    if (!half_odd && !allow_integer)
        throw InvalidQuantumNumbers(
            "integer kappa requires the allow_integer_kappa override");
}

// Per-cell angular eigenvalue continuation along the energy sweep. The
// branch is pinned at the first solve by its raw-mismatch plateau (an even
// multiple of pi); later solves track it with a local bracket.
class AngularTracker {
public:
    AngularTracker(const SpectrumRequest& req, double kappa, int branch)
        : req_(req), kappa_(kappa), branch_(branch) {}

    double lambda_at(double E) {
        angular::AngularSolveRequest areq;
        areq.E = E;
        areq.kappa = kappa_;
        areq.params = req_.params;
        areq.branch_index = branch_;
        areq.theta0 = req_.theta0;
        areq.ode = req_.ode;
        areq.max_branches = std::max(req_.max_branches, branch_ + 1);
        if (primed_) {
            areq.lambda_hint = lambda_;
            areq.mismatch_target = target_;
        }
        angular::AngularSolution sol = angular::angular_eigenvalue(areq);
        lambda_ = sol.lambda;
        residual_ = sol.residual;
        if (!primed_) {
            target_ = round_to_2pi(sol.mismatch_raw);
            primed_ = true;
        }
        return lambda_;
    }

    double last_lambda() const { return lambda_; }
    double last_residual() const { return residual_; }

private:
    const SpectrumRequest& req_;
    double kappa_;
    int branch_;
    bool primed_ = false;
    double lambda_ = 0;
    double target_ = 0;
    double residual_ = 0;
};

struct CellResult {
    std::vector<EigenPair> pairs;
    long grid_evals = 0;
    long refine_evals = 0;
    bool cap_hit = false;
};

class CellScanner {
public:
    CellScanner(const SpectrumRequest& req, double kappa, int branch)
        : req_(req), kappa_(kappa), branch_(branch), tracker_(req, kappa, branch) {}

    CellResult run() {
        const double lo = req_.e_lo, hi = req_.e_hi;
        const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / req_.scan_step)));
        double e_prev = lo;
        double d_prev = defect_raw(lo);
        result_.grid_evals = evals_;
        for (int i = 1; i <= n && !result_.cap_hit; ++i) {
            double e = (i == n) ? hi : lo + (hi - lo) * i / static_cast<double>(n);
            long before = evals_;
            double d = defect_raw(e);
            result_.grid_evals += evals_ - before;
            long before_ref = evals_;
            refine(e_prev, d_prev, e, d);
            result_.refine_evals += evals_ - before_ref;
            e_prev = e;
            d_prev = d;
        }
        dedup();
        return std::move(result_);
    }

private:
    double defect_raw(double E) {
        ++evals_;
        double lambda = tracker_.lambda_at(E);
        radial::RadialSolveRequest rreq;
        rreq.E = E;
        rreq.lambda = lambda;
        rreq.kappa = kappa_;
        rreq.params = req_.params;
        rreq.r_infinity = req_.r_infinity;
        rreq.ode = req_.ode;
        last_match_ = radial::shoot_radial(rreq);
        return last_match_.defect_raw;
    }

    void emit(double E, double bracket) {
        defect_raw(E); // refresh lambda and the radial match at the root
        EigenPair p;
        p.E = E;
        p.lambda = tracker_.last_lambda();
        p.kappa = kappa_;
        p.n_theta = branch_;
        p.winding = last_match_.winding;
        p.residual_angular = tracker_.last_residual();
        p.residual_radial = bracket;
        result_.pairs.push_back(p);
        if (static_cast<int>(result_.pairs.size()) >= req_.max_eigenvalues)
            result_.cap_hit = true;
    }

    // Eigenvalues are the crossings of the raw defect through even multiples
    // of pi. Near a deeply bound state the defect slips by 2 pi across an
    // energy wall narrower than one ulp, so the wall interior is never
    // resolved: each crossed level gets its own bracketing root solve, which
    // localizes even a sub-ulp step to the requested tolerance.
    void refine(double ea, double da, double eb, double db) {
        double lo = std::min(da, db), hi = std::max(da, db);
        long k_lo = static_cast<long>(std::ceil(lo / (2 * pi)));
        long k_hi = static_cast<long>(std::floor(hi / (2 * pi)));
        if (k_lo > k_hi) return; // no level between the endpoint plateaus
        // walk the levels in the order they are met from ea, so emitted
        // eigenvalues come out ascending in E
        bool descending = da > db;
        for (long i = 0; i <= k_hi - k_lo && !result_.cap_hit; ++i) {
            long k = descending ? k_hi - i : k_lo + i;
            double target = 2 * pi * static_cast<double>(k);
            double ga = da - target, gb = db - target;
            if (ga == 0) {
                emit(ea, root_tol_used);
                continue;
            }
            if (gb == 0) continue; // the next interval's left endpoint emits it
            if ((ga > 0) == (gb > 0)) continue; // plateau grazes the level
            double bracket = 0;
            double root = num::find_root(
                [&](double e) { return defect_raw(e) - target; }, ea, eb,
                root_tol_used, &bracket);
            emit(root, bracket);
        }
    }

    void dedup() {
        auto& v = result_.pairs;
        std::vector<EigenPair> out;
        for (const auto& p : v) {
            if (!out.empty() && std::abs(p.E - out.back().E) < req_.dedup_tol)
                continue;
            out.push_back(p);
        }
        v = std::move(out);
    }

public:
    static constexpr double root_tol_used = 1e-15;

private:
    const SpectrumRequest& req_;
    double kappa_;
    int branch_;
    AngularTracker tracker_;
    radial::RadialMatch last_match_;
    CellResult result_;
    long evals_ = 0;
};

} // namespace

double sommerfeld_energy(int n, int kappa_s, double alpha) {
    if (n < 1 || kappa_s < 1 || kappa_s > n)
        throw InvalidQuantumNumbers("need 1 <= kappa_s <= n");
    if (!(alpha > 0) || alpha >= kappa_s)
        throw OutOfGap("need 0 < alpha < kappa_s for a real Sommerfeld level");
    double root = std::sqrt(static_cast<double>(kappa_s) * kappa_s - alpha * alpha);
    double denom = n - kappa_s + root;
    return 1.0 / std::sqrt(1.0 + alpha * alpha / (denom * denom));
}

double bohr_energy(int n, double alpha, double mu) {
    if (n < 1) throw InvalidQuantumNumbers("need n >= 1");
    return -mu * alpha * alpha / (2.0 * n * n);
}

SufficientConditions check_sufficient_conditions(const geom::ModelParams& params) {
    SufficientConditions c;
    double two_a = 2 * std::abs(params.a);
    c.ring_radius_ok = two_a < 1;
    c.threshold = c.ring_radius_ok ? std::sqrt(two_a * (1 - two_a)) : 0;
    c.coupling_ok = c.ring_radius_ok && params.gamma < c.threshold;
    return c;
}

SpectrumReport point_spectrum(const SpectrumRequest& req) {
    if (req.kappas.empty())
        throw InvalidQuantumNumbers("kappa list is empty");
    for (double k : req.kappas) validate_kappa(k, req.allow_integer_kappa);
    if (!(req.e_lo < req.e_hi)) {
        char buf[96];
        std::snprintf(buf, sizeof buf,
                      "window [%.6g, %.6g] is empty: e_lo must be less than e_hi",
                      req.e_lo, req.e_hi);
        throw OutOfGap(buf);
    }
    if (req.e_lo <= -1 || req.e_hi >= 1) {
        char buf[96];
        std::snprintf(buf, sizeof buf,
                      "window [%.6g, %.6g] must lie strictly inside (-1, 1)",
                      req.e_lo, req.e_hi);
        throw OutOfGap(buf);
    }
    if (std::abs(req.params.a) < 1e-6)
        throw InvalidQuantumNumbers(
            "spectrum scan needs |a| >= 1e-6; at a = 0 use the Sommerfeld closed form");
    if (req.max_branches < 1 || req.max_branches > 8)
        throw NoBranchFound("max_branches must be in 1..8");

    SufficientConditions cond = check_sufficient_conditions(req.params);
    if (!cond.ok() && !req.override_conditions) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "sufficient conditions fail (2|a|<1: %s, gamma<%.6g: %s); "
                      "set override_conditions to scan anyway",
                      cond.ring_radius_ok ? "yes" : "no", cond.threshold,
                      cond.coupling_ok ? "yes" : "no");
        throw OutOfGap(buf);
    }

    struct CellKey {
        double kappa;
        int branch;
    };
    std::vector<CellKey> cells;
    for (double k : req.kappas)
        for (int b = 0; b < req.max_branches; ++b) cells.push_back({k, b});

    std::vector<CellResult> results(cells.size());
    int threads = req.threads > 0
                      ? req.threads
                      : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<int>(threads, static_cast<int>(cells.size()));

    std::atomic<std::size_t> next{0};
    std::vector<std::string> cell_errors(cells.size());
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) break;
            try {
                CellScanner scanner(req, cells[i].kappa, cells[i].branch);
                results[i] = scanner.run();
            } catch (const Error& e) {
                cell_errors[i] = e.what();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (!cell_errors[i].empty())
            throw IntegrationFailure("cell (kappa=" + std::to_string(cells[i].kappa) +
                                     ", branch=" + std::to_string(cells[i].branch) +
                                     ") failed: " + cell_errors[i]);

    SpectrumReport rep;
    rep.params = req.params;
    rep.channels = req.kappas;
    rep.conditions = cond;
    rep.scan.e_lo = req.e_lo;
    rep.scan.e_hi = req.e_hi;
    rep.scan.scan_step = req.scan_step;
    rep.scan.root_tol_requested = req.root_tol;
    rep.scan.root_tol_used = CellScanner::root_tol_used;
    rep.scan.dedup_tol = req.dedup_tol;
    rep.scan.cells = static_cast<int>(cells.size());
    rep.scan.threads = threads;
    for (const auto& r : results) {
        rep.eigenvalues.insert(rep.eigenvalues.end(), r.pairs.begin(), r.pairs.end());
        rep.scan.grid_evaluations += r.grid_evals;
        rep.scan.refine_evaluations += r.refine_evals;
        rep.scan.eigenvalue_cap_hit = rep.scan.eigenvalue_cap_hit || r.cap_hit;
    }

    rep.gap_ok = true;
    for (const auto& p : rep.eigenvalues)
        if (!(std::abs(p.E) < 1)) rep.gap_ok = false;

    rep.symmetry_defect = 0;
    for (const auto& p : rep.eigenvalues) {
        double best = 2.0;
        for (const auto& q : rep.eigenvalues)
            best = std::min(best, std::abs(p.E + q.E));
        if (!rep.eigenvalues.empty())
            rep.symmetry_defect = std::max(rep.symmetry_defect, best);
    }
    return rep;
}

std::vector<SommerfeldRow> sommerfeld_comparison(const SpectrumReport& report,
                                                 double alpha, int n_max) {
    std::vector<SommerfeldRow> rows;
    for (const auto& p : report.eigenvalues) {
        if (p.E <= 0) continue;
        SommerfeldRow row;
        row.computed_E = p.E;
        row.deviation = 2.0;
        for (int n = 1; n <= n_max; ++n) {
            for (int ks = 1; ks <= n; ++ks) {
                if (alpha >= ks) continue;
                double e = sommerfeld_energy(n, ks, alpha);
                double dev = std::abs(p.E - e);
                if (dev < row.deviation) {
                    row.deviation = dev;
                    row.n = n;
                    row.kappa_s = ks;
                    row.sommerfeld_E = e;
                }
            }
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace zgkn::spectrum
