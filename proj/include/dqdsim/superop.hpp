#ifndef DQDSIM_SUPEROP_HPP
#define DQDSIM_SUPEROP_HPP

#include <array>

#include "dqdsim/op2.hpp"

namespace dqd {

// Column-major vectorization of an Op2: v = (a00, a10, a01, a11).
using Vec4 = std::array<cxd, 4>;

inline Vec4 vectorize(const Op2& a) {
    return Vec4{a(0, 0), a(1, 0), a(0, 1), a(1, 1)};
}

inline Op2 devectorize(const Vec4& v) {
    Op2 a;
    a(0, 0) = v[0];
    a(1, 0) = v[1];
    a(0, 1) = v[2];
    a(1, 1) = v[3];
    return a;
}

// 4x4 matrix acting on Vec4, row-major.
struct Superop {
    std::array<cxd, 16> m{};

    cxd& operator()(int i, int j) { return m[4 * i + j]; }
    const cxd& operator()(int i, int j) const { return m[4 * i + j]; }

    Superop& operator+=(const Superop& o) {
        for (int i = 0; i < 16; ++i) m[i] += o.m[i];
        return *this;
    }
    friend Superop operator+(Superop a, const Superop& b) { return a += b; }

    Vec4 apply(const Vec4& v) const {
        Vec4 out{};
        for (int i = 0; i < 4; ++i) {
            cxd s(0);
            for (int j = 0; j < 4; ++j) s += m[4 * i + j] * v[j];
            out[i] = s;
        }
        return out;
    }
};

// A |-> scale*(op*A - A*op). With scale = -i this is the Liouvillian
// convention L A = -i [H, A]. In the column-major layout,
// op*A = (I (x) op) vec A and A*op = (op^T (x) I) vec A.
// All superoperator construction goes through here so the vectorization
// layout is fixed in exactly one place.
inline Superop commutator_superop(const Op2& op, cxd scale) {
    Superop s;
    // I (x) op : block-diagonal copies of op
    for (int b = 0; b < 2; ++b)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) s(2 * b + i, 2 * b + j) += scale * op(i, j);
    // op^T (x) I : op(j,i) on identity blocks
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int b = 0; b < 2; ++b) s(2 * i + b, 2 * j + b) -= scale * op(j, i);
    return s;
}

} // namespace dqd

#endif
