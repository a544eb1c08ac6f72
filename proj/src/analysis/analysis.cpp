#include "qpr/analysis.hpp"

#include <cmath>

#include "qpr/errors.hpp"

namespace qpr {

int reference_qubit(const AttentionMatrix& m) {
    const int n = m.n_qubits();
    if (n < 3) throw UsageError("reference_qubit: need at least 3 qubits");
    int best = 0;
    double best_sum = 0.0;
    for (int k = 0; k < n; ++k) {
        double row = 0.0;
        for (int j = 0; j < n; ++j)
            if (j != k) row += m.at(k, j);
        if (k == 0 || row < best_sum) {
            best = k;
            best_sum = row;
        }
    }
    return best;
}

std::string to_string(Side s) { return s == Side::before ? "before" : "after"; }

Side pick_side(int reference, int n_qubits) {
    const int before = reference;
    const int after = n_qubits - 1 - reference;
    return after >= before ? Side::after : Side::before;
}

ContrastResult contrast(const AttentionMatrix& m) {
    const int n = m.n_qubits();
    const int k = reference_qubit(m);
    const Side side = pick_side(k, n);

    ContrastResult r;
    r.reference_qubit = k;
    if (side == Side::after) {
        r.q_near = m.at(k, k + 1);
        r.q_long = m.at(k, n - 1);
    } else {
        r.q_near = m.at(k, k - 1);
        r.q_long = m.at(k, 0);
    }
    const double denom = r.q_near + r.q_long;
    if (std::abs(denom) <= 1e-12)
        throw NumericalError("contrast: q_near + q_long vanishes, contrast undefined");
    r.value = (r.q_near - r.q_long) / denom;
    return r;
}

CorrelationProfile correlation_profile(const AttentionMatrix& m) {
    const int n = m.n_qubits();
    const int k = reference_qubit(m);
    const Side side = pick_side(k, n);

    const int lo = side == Side::after ? k + 1 : 0;
    const int n_sub = side == Side::after ? n - 1 - k : k;
    if (n_sub < 3)
        throw UsageError("correlation_profile: side submatrix has fewer than 3 qubits");

    CorrelationProfile out;
    out.reference_qubit = k;
    out.side = side;
    out.n_sub = n_sub;
    out.f.resize(static_cast<std::size_t>(n_sub) - 1);
    for (int r = 1; r < n_sub; ++r) {
        double acc = 0.0;
        for (int i = 0; i + r < n_sub; ++i) acc += m.at(lo + i, lo + i + r);
        out.f[static_cast<std::size_t>(r) - 1] = acc / (n_sub - r);
    }

    // least squares on ln f(r) over usable points
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int used = 0;
    for (int r = 1; r < n_sub; ++r) {
        const double fr = out.f[static_cast<std::size_t>(r) - 1];
        if (fr <= 1e-12) continue;
        const double y = std::log(fr);
        sx += r;
        sy += y;
        sxx += static_cast<double>(r) * r;
        sxy += r * y;
        ++used;
    }
    if (used < 2)
        throw FitError("correlation_profile: fewer than 2 usable points for the xi fit");
    const double denom = used * sxx - sx * sx;
    const double slope = (used * sxy - sx * sy) / denom;

    out.fit_slope = slope;
    out.fit_points_used = used;
    if (slope < -1e-12) {
        out.xi = -1.0 / slope;
        out.non_decaying = false;
    } else {
        out.xi = 1.0 / std::max(std::abs(slope), 1e-12);
        out.non_decaying = true;
    }
    return out;
}

}  // namespace qpr
