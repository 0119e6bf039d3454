#include "hodgelab/inverse.hpp"

#include <cmath>

namespace hodgelab {

DbarInverseResult dbarInverse(const FourierForm& g) {
    DbarInverseResult r;
    FourierForm dg = del(g);
    FourierForm Gdg = green(dg);
    r.s = dbarStar(Gdg);
    r.residual = l2Norm(dbar(r.s) - dg);
    r.solutionNormSq = l2NormSq(r.s);
    r.energyBound = std::real(l2Inner(Gdg, dg));
    r.harmonicDefect = l2Norm(harmonic(r.s));
    r.coclosedDefect = l2Norm(dbarStar(r.s));
    return r;
}

QuasiIsometryReport quasiIsometryReport(const FourierForm& g, Real tol) {
    QuasiIsometryReport r;
    r.opNormSq = l2NormSq(dbarStar(green(g)));
    r.energy = std::real(l2Inner(green(g), g));

    r.fourLhs = l2NormSq(dbarStar(green(del(g))));
    r.fourNormSq = l2NormSq(g);
    r.fourHarmonicSq = l2NormSq(harmonic(g));
    FourierForm dsg = delStar(g);
    r.fourDelStar = std::real(l2Inner(green(dsg), dsg));
    FourierForm mixed = dbar(del(g));
    r.fourMixedSq = l2NormSq(green(mixed));
    r.integrability = l2Norm(mixed);
    r.kernelDefect = l2Norm(projectToKernel(g, {{LinearOp::Del}}));
    Real scale = std::sqrt(r.fourNormSq);
    r.isometry = r.integrability <= tol * std::max<Real>(scale, 1) &&
                 r.kernelDefect <= tol * std::max<Real>(scale, 1);
    return r;
}

FourierForm projectToKernel(const FourierForm& f,
                            const std::vector<std::vector<LinearOp>>& words) {
    const FormShape& sh = f.shape();
    std::vector<ComponentKey> keys = sh.componentKeys();
    int N = int(keys.size());
    if (N == 0 || words.empty()) return f;
    ModeLayout lay = f.layout();
    std::int64_t M = lay.size();

    Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(N, M);
    for (int c = 0; c < N; ++c)
        if (const VectorXcd* v = f.findComponent(keys[c])) X.row(c) = v->transpose();

    std::vector<int> coords(2 * lay.n);
    for (std::int64_t i = 0; i < M; ++i) {
        lay.decode(i, coords.data());
        std::vector<Eigen::MatrixXcd> mats;
        int rows = 0;
        for (const auto& word : words) {
            mats.push_back(modeMatrix(word, sh, coords.data()));
            rows += int(mats.back().rows());
        }
        if (rows == 0) continue;
        Eigen::MatrixXcd A(rows, N);
        int at = 0;
        for (const auto& m : mats) {
            A.middleRows(at, m.rows()) = m;
            at += int(m.rows());
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        Real cut = (sv.size() > 0) ? sv(0) * 1e-10 : 0;
        int rank = 0;
        for (int k = 0; k < sv.size(); ++k)
            if (sv(k) > cut && sv(k) > 1e-14) ++rank;
        if (rank == 0) continue; // whole space is kernel
        if (rank == N) {
            X.col(i).setZero();
            continue;
        }
        Eigen::MatrixXcd Vn = svd.matrixV().rightCols(N - rank);
        X.col(i) = Vn * (Vn.adjoint() * X.col(i)).eval();
    }

    FourierForm out(f.geometry(), sh.p, sh.q, sh.kind, f.band());
    for (int c = 0; c < N; ++c) out.component(keys[c]) = X.row(c).transpose();
    out.pruneZeroComponents();
    return out;
}

} // namespace hodgelab
