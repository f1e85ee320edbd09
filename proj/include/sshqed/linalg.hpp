// linalg.hpp — LAPACK-backed eigensolves, tridiagonal solves, parallel_for

#pragma once

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <Eigen/Dense>

#include <stdexcept>
#include <thread>
#include <vector>

namespace sshqed {

struct Eigensystem {
    Eigen::VectorXd values;  // ascending
    Eigen::MatrixXd vectors; // columns
};

// Symmetric tridiagonal eigensolve (divide and conquer).  All Hamiltonians in
// this project have bandwidth 1 in site order, so this is the workhorse.
inline Eigensystem eig_tridiagonal(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag) {
    const auto n = static_cast<lapack_int>(diag.size());
    if (offdiag.size() != n - 1)
        throw std::invalid_argument("eig_tridiagonal: offdiag must have length n-1");
    Eigensystem es;
    es.values = diag;
    Eigen::VectorXd e = offdiag;
    es.vectors.resize(n, n);
    const lapack_int info = LAPACKE_dstevd(LAPACK_COL_MAJOR, 'V', n, es.values.data(), e.data(),
                                           es.vectors.data(), n);
    if (info != 0) throw std::runtime_error("eig_tridiagonal: LAPACK dstevd failed");
    return es;
}

// Dense symmetric eigensolve; kept as the independent cross-check for the
// tridiagonal path in tests.
inline Eigensystem eig_dense(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eig_dense: eigensolver failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

// Solve (z - H) x = rhs for complex z and tridiagonal H given by its bands.
inline Eigen::VectorXcd solve_shifted_tridiagonal(std::complex<double> z,
                                                  const Eigen::VectorXd& diag,
                                                  const Eigen::VectorXd& offdiag,
                                                  const Eigen::VectorXcd& rhs) {
    const auto n = static_cast<lapack_int>(diag.size());
    if (rhs.size() != n) throw std::invalid_argument("solve_shifted_tridiagonal: rhs size");
    std::vector<std::complex<double>> dl(n - 1), d(n), du(n - 1);
    for (lapack_int i = 0; i < n; ++i) d[i] = z - diag[i];
    for (lapack_int i = 0; i + 1 < n; ++i) dl[i] = du[i] = -offdiag[i];
    Eigen::VectorXcd x = rhs;
    const lapack_int info =
        LAPACKE_zgtsv(LAPACK_COL_MAJOR, n, 1, dl.data(), d.data(), du.data(), x.data(), n);
    if (info != 0) throw std::runtime_error("solve_shifted_tridiagonal: LAPACK zgtsv failed");
    return x;
}

// Chunked index-parallel loop; each index owns its output slot, so results are
// deterministic regardless of thread count.
template <typename Fn>
void parallel_for(int n, Fn&& fn) {
    const unsigned hw = std::thread::hardware_concurrency();
    const int workers = static_cast<int>(hw == 0 ? 1 : hw);
    if (n <= 1 || workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (int i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace sshqed
