// Serial-vs-OpenMP kernel benchmark: gate applications, overlaps, H|v>,
// and full attention construction across qubit counts.
//
//   qpr_bench [--min 10] [--max 16] [--reps 20]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "qpr/ansatz.hpp"
#include "qpr/attention.hpp"
#include "qpr/hamiltonian.hpp"
#include "qpr/rng.hpp"
#include "qpr/statevec.hpp"

using namespace qpr;

namespace {

StateVector random_state(int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cd> amp(std::size_t{1} << n);
    double norm_sq = 0.0;
    for (auto& a : amp) {
        a = cd{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        norm_sq += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& a : amp) a *= inv;
    return StateVector::from_amplitudes(n, std::move(amp));
}

double time_ms(int reps, const std::function<void()>& body) {
    body();  // warm up
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) body();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, int n, double serial_ms, double parallel_ms) {
    std::printf("%-18s n=%2d  serial %9.4f ms  openmp %9.4f ms  speedup %5.2fx\n", name,
                n, serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
    int n_min = 10, n_max = 16, reps = 20;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--min") && i + 1 < argc) n_min = std::atoi(argv[++i]);
        else if (!std::strcmp(argv[i], "--max") && i + 1 < argc) n_max = std::atoi(argv[++i]);
        else if (!std::strcmp(argv[i], "--reps") && i + 1 < argc) reps = std::atoi(argv[++i]);
        else {
            std::fprintf(stderr, "usage: qpr_bench [--min N] [--max N] [--reps N]\n");
            return 2;
        }
    }

    std::printf("threads: %d\n", omp_get_max_threads());

    for (int n = n_min; n <= n_max; ++n) {
        StateVector base = random_state(n, 42);
        const Mat2 ry = ry_matrix(0.37);
        const Mat2 rx = rx_matrix(0.59);

        {
            StateVector s = base;
            const double ts = time_ms(reps, [&] {
                for (int q = 0; q < n; ++q) kern::serial::apply_1q(s.data(), s.dim(), q, ry);
            });
            const double tp = time_ms(reps, [&] {
                for (int q = 0; q < n; ++q) kern::par::apply_1q(s.data(), s.dim(), q, ry);
            });
            report("ry sweep", n, ts, tp);
        }
        {
            StateVector s = base;
            const double ts = time_ms(reps, [&] {
                for (int q = 0; q < n; ++q)
                    kern::serial::apply_ctrl_1q(s.data(), s.dim(), q, (q + 1) % n, rx);
            });
            const double tp = time_ms(reps, [&] {
                for (int q = 0; q < n; ++q)
                    kern::par::apply_ctrl_1q(s.data(), s.dim(), q, (q + 1) % n, rx);
            });
            report("crx ring", n, ts, tp);
        }
        {
            const double ts = time_ms(reps, [&] {
                volatile double keep = 0.0;
                for (int q = 1; q < n; ++q)
                    keep = keep + kern::serial::swap_overlap(base.data(), base.dim(), 0, q).real();
            });
            const double tp = time_ms(reps, [&] {
                volatile double keep = 0.0;
                for (int q = 1; q < n; ++q)
                    keep = keep + kern::par::swap_overlap(base.data(), base.dim(), 0, q).real();
            });
            report("swap overlap", n, ts, tp);
        }
        if (n % 2 == 1 && n <= 15) {
            const auto terms = build_terms({n, 1.0, 0.39, -0.8});
            StateVector out = StateVector::zero(n);
            const double ts = time_ms(reps, [&] {
                set_default_backend(Backend::serial);
                out = matvec(terms, base);
            });
            const double tp = time_ms(reps, [&] {
                set_default_backend(Backend::parallel);
                out = matvec(terms, base);
            });
            set_default_backend(Backend::parallel);
            report("hamiltonian mv", n, ts, tp);
        }
        if (n <= 15) {
            const double ts = time_ms(std::max(1, reps / 4), [&] {
                set_default_backend(Backend::serial);
                attention_analytic(base);
            });
            const double tp = time_ms(std::max(1, reps / 4), [&] {
                set_default_backend(Backend::parallel);
                attention_analytic(base);
            });
            set_default_backend(Backend::parallel);
            report("attention", n, ts, tp);
        }
    }
    return 0;
}
