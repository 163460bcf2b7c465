#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "so3limb/screw.hpp"

namespace so3limb::detail {

inline int numeric_rank(const Eigen::MatrixXd& m, double rel_tol = kRelTol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    const double cutoff = std::max(rel_tol * sv(0), kAbsFloor);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) ++rank;
    }
    return rank;
}

/// Flips the vector so its first component larger than the tolerance in
/// magnitude is positive. Keeps reports deterministic.
inline void canonicalize_sign(Eigen::Ref<Eigen::VectorXd> v, double tol = kRelTol) {
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > tol) {
            if (v(i) < 0) v = -v;
            return;
        }
    }
}

/// Orthonormal nullspace basis as columns, ordered by ascending singular
/// value of the corresponding direction, signs canonicalized.
inline Eigen::MatrixXd nullspace(const Eigen::MatrixXd& m, int* rank_out = nullptr,
                                 double rel_tol = kRelTol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
    const double cutoff = std::max(rel_tol * sigma_max, kAbsFloor);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) ++rank;
    }
    if (rank_out) *rank_out = rank;
    const int n = static_cast<int>(m.cols());
    Eigen::MatrixXd basis = svd.matrixV().rightCols(n - rank);
    // Smallest singular direction first.
    basis.rowwise().reverseInPlace();
    for (int c = 0; c < basis.cols(); ++c) {
        canonicalize_sign(basis.col(c));
    }
    return basis;
}

/// Moore-Penrose pseudo-inverse with the repository rank tolerance.
inline Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& m, double rel_tol = kRelTol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = sv.size() > 0 ? std::max(rel_tol * sv(0), kAbsFloor) : kAbsFloor;
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) inv(i) = 1.0 / sv(i);
    }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

/// Orthonormal basis of the column space.
inline Eigen::MatrixXd column_space(const Eigen::MatrixXd& m, double rel_tol = kRelTol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double cutoff = sv.size() > 0 ? std::max(rel_tol * sv(0), kAbsFloor) : kAbsFloor;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) ++rank;
    }
    return svd.matrixU().leftCols(rank);
}

} // namespace so3limb::detail
