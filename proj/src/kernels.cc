// Copyright 2026 The cvcz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cvcz/kernels.h"

#include <stdexcept>

namespace cvcz {

namespace {

bool touches(const LocalChannel &ch, Eigen::Index j) {
    for (size_t b = 0; b < ch.size; b++) {
        if (static_cast<Eigen::Index>(ch.quads[b]) == j) {
            return true;
        }
    }
    return false;
}

// Row/column j of T cov T^T for j outside ch.quads: only the entries at
// ch.quads change, and they depend on column j alone.
inline void update_line(Eigen::MatrixXd &cov, const LocalChannel &ch, Eigen::Index j) {
    double in[MAX_LOCAL_QUADRATURES];
    for (size_t b = 0; b < ch.size; b++) {
        in[b] = cov(static_cast<Eigen::Index>(ch.quads[b]), j);
    }
    for (size_t a = 0; a < ch.size; a++) {
        double acc = 0;
        for (size_t b = 0; b < ch.size; b++) {
            acc += ch.X(a, b) * in[b];
        }
        auto q = static_cast<Eigen::Index>(ch.quads[a]);
        cov(q, j) = acc;
        cov(j, q) = acc;
    }
}

void update_block(Eigen::MatrixXd &cov, const LocalChannel &ch) {
    LocalMatrix block(ch.size, ch.size);
    for (size_t a = 0; a < ch.size; a++) {
        for (size_t b = 0; b < ch.size; b++) {
            block(a, b) = cov(static_cast<Eigen::Index>(ch.quads[a]), static_cast<Eigen::Index>(ch.quads[b]));
        }
    }
    LocalMatrix out = ch.X * block * ch.X.transpose() + ch.Y;
    for (size_t a = 0; a < ch.size; a++) {
        for (size_t b = 0; b < ch.size; b++) {
            double v = 0.5 * (out(a, b) + out(b, a));
            cov(static_cast<Eigen::Index>(ch.quads[a]), static_cast<Eigen::Index>(ch.quads[b])) = v;
        }
    }
}

void check_channel(const Eigen::MatrixXd &cov, const LocalChannel &ch) {
    if (ch.size == 0 || ch.size > MAX_LOCAL_QUADRATURES || static_cast<size_t>(ch.X.rows()) != ch.size ||
        static_cast<size_t>(ch.X.cols()) != ch.size || static_cast<size_t>(ch.Y.rows()) != ch.size ||
        static_cast<size_t>(ch.Y.cols()) != ch.size) {
        throw std::invalid_argument("LocalChannel: inconsistent block sizes");
    }
    for (size_t b = 0; b < ch.size; b++) {
        if (static_cast<Eigen::Index>(ch.quads[b]) >= cov.rows()) {
            throw std::invalid_argument("LocalChannel: quadrature index out of range");
        }
    }
}

}  // namespace

LocalChannel make_local_channel(std::initializer_list<size_t> modes, LocalMatrix X, LocalMatrix Y) {
    LocalChannel ch;
    for (size_t m : modes) {
        if (ch.size + 2 > MAX_LOCAL_QUADRATURES) {
            throw std::invalid_argument("make_local_channel: too many modes");
        }
        ch.quads[ch.size++] = 2 * m;
        ch.quads[ch.size++] = 2 * m + 1;
    }
    ch.X = std::move(X);
    ch.Y = std::move(Y);
    if (static_cast<size_t>(ch.X.rows()) != ch.size || static_cast<size_t>(ch.Y.rows()) != ch.size) {
        throw std::invalid_argument("make_local_channel: block size does not match mode count");
    }
    return ch;
}

void apply_local_serial(Eigen::MatrixXd &cov, const LocalChannel &ch) {
    check_channel(cov, ch);
    for (Eigen::Index j = 0; j < cov.cols(); j++) {
        if (!touches(ch, j)) {
            update_line(cov, ch, j);
        }
    }
    update_block(cov, ch);
}

void apply_local_parallel(Eigen::MatrixXd &cov, const LocalChannel &ch) {
    check_channel(cov, ch);
    const Eigen::Index n = cov.cols();
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < n; j++) {
        if (!touches(ch, j)) {
            update_line(cov, ch, j);
        }
    }
    update_block(cov, ch);
}

}  // namespace cvcz
