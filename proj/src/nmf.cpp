#include "themeforge/nmf.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include <Eigen/Dense>

#include "themeforge/errors.hpp"
#include "themeforge/rng.hpp"

namespace themeforge {

CsrMatrix CsrMatrix::from_dense(int rows, int cols, const std::vector<double>& data) {
    CsrMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.row_ptr.push_back(0);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            double v = data[static_cast<size_t>(r) * cols + c];
            if (v != 0.0) {
                m.col.push_back(c);
                m.val.push_back(v);
            }
        }
        m.row_ptr.push_back(static_cast<int>(m.col.size()));
    }
    return m;
}

double CsrMatrix::frobenius_norm_sq() const {
    double s = 0.0;
    for (double v : val) s += v * v;
    return s;
}

CsrMatrix to_csr(const SparseCounts& counts) {
    CsrMatrix m;
    m.rows = counts.num_docs;
    m.cols = counts.num_terms;
    m.row_ptr = counts.row_ptr;
    m.col = counts.term;
    m.val.assign(counts.count.begin(), counts.count.end());
    return m;
}

CsrMatrix to_csr(const TfidfWeights& weights) {
    CsrMatrix m;
    m.rows = weights.num_docs;
    m.cols = weights.num_terms;
    m.row_ptr = weights.row_ptr;
    m.col = weights.term;
    m.val = weights.weight;
    return m;
}

void validate(const NmfConfig& cfg) {
    if (cfg.k < 1) throw ConfigError("nmf: k must be >= 1");
    if (cfg.max_iter < 1) throw ConfigError("nmf: max_iter must be >= 1");
    if (cfg.tol < 0.0) throw ConfigError("nmf: tol must be >= 0");
    if (!(cfg.eps > 0.0)) throw ConfigError("nmf: eps must be > 0");
    if (cfg.init != "random" && cfg.init != "nndsvd")
        throw ConfigError("nmf: init must be \"random\" or \"nndsvd\"");
}

namespace {

void check_input(const CsrMatrix& v) {
    bool any_nonzero = false;
    for (double x : v.val) {
        if (x < 0.0) throw DegenerateInputError("nmf: input matrix has a negative entry");
        if (x != 0.0) any_nonzero = true;
    }
    if (v.rows == 0 || v.cols == 0 || !any_nonzero)
        throw DegenerateInputError("nmf: input matrix is empty or all zero");
}

std::pair<DenseMatrix, DenseMatrix> init_random(const CsrMatrix& v, const NmfConfig& cfg) {
    double sum = 0.0;
    for (double x : v.val) sum += x;
    double mean = sum / (static_cast<double>(v.rows) * v.cols);
    double scale = std::sqrt(mean / cfg.k);

    Rng rng(cfg.seed);
    DenseMatrix w(v.rows, cfg.k);
    DenseMatrix h(cfg.k, v.cols);
    for (auto& x : w.data) x = rng.next_double() * scale;
    for (auto& x : h.data) x = rng.next_double() * scale;
    return {std::move(w), std::move(h)};
}

// Boutsidis & Gallopoulos 2008: per singular triplet keep the dominant of
// the positive/negative parts of the singular vectors.
std::pair<DenseMatrix, DenseMatrix> init_nndsvd(const CsrMatrix& v, const NmfConfig& cfg) {
    const int rank_cap = std::min(v.rows, v.cols);
    if (cfg.k > rank_cap)
        throw ConfigError("nmf: nndsvd init requires k <= min(docs, terms)");

    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(v.rows, v.cols);
    for (int r = 0; r < v.rows; ++r)
        for (int i = v.row_ptr[r]; i < v.row_ptr[r + 1]; ++i) dense(r, v.col[i]) = v.val[i];

    Eigen::BDCSVD<Eigen::MatrixXd> svd(dense, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& u = svd.matrixU();
    const auto& vt = svd.matrixV();
    const auto& sigma = svd.singularValues();

    DenseMatrix w(v.rows, cfg.k);
    DenseMatrix h(cfg.k, v.cols);

    // leading singular vectors of a non-negative matrix are sign-consistent
    double s0 = std::sqrt(sigma(0));
    for (int r = 0; r < v.rows; ++r) w.at(r, 0) = s0 * std::abs(u(r, 0));
    for (int c = 0; c < v.cols; ++c) h.at(0, c) = s0 * std::abs(vt(c, 0));

    for (int j = 1; j < cfg.k; ++j) {
        double nxp = 0, nxn = 0, nyp = 0, nyn = 0;
        for (int r = 0; r < v.rows; ++r) {
            double x = u(r, j);
            (x >= 0 ? nxp : nxn) += x * x;
        }
        for (int c = 0; c < v.cols; ++c) {
            double y = vt(c, j);
            (y >= 0 ? nyp : nyn) += y * y;
        }
        nxp = std::sqrt(nxp);
        nxn = std::sqrt(nxn);
        nyp = std::sqrt(nyp);
        nyn = std::sqrt(nyn);

        const bool positive = nxp * nyp >= nxn * nyn;
        double m = positive ? nxp * nyp : nxn * nyn;
        if (m <= 0.0) continue; // degenerate direction, leave the pair zero
        double nx = positive ? nxp : nxn;
        double ny = positive ? nyp : nyn;
        double factor = std::sqrt(sigma(j) * m);
        for (int r = 0; r < v.rows; ++r) {
            double x = u(r, j);
            double part = positive ? std::max(x, 0.0) : std::max(-x, 0.0);
            w.at(r, j) = factor * part / nx;
        }
        for (int c = 0; c < v.cols; ++c) {
            double y = vt(c, j);
            double part = positive ? std::max(y, 0.0) : std::max(-y, 0.0);
            h.at(j, c) = factor * part / ny;
        }
    }
    return {std::move(w), std::move(h)};
}

} // namespace

std::pair<DenseMatrix, DenseMatrix> nmf_init(const CsrMatrix& v, const NmfConfig& cfg) {
    validate(cfg);
    check_input(v);
    if (cfg.init == "nndsvd") return init_nndsvd(v, cfg);
    return init_random(v, cfg);
}

void nmf_update(const CsrMatrix& v, DenseMatrix& w, DenseMatrix& h, double eps) {
    const int k = w.cols;
    const int rows = v.rows;
    const int cols = v.cols;

    // H <- H .* (W'V) ./ (W'WH + eps)
    DenseMatrix wtv(k, cols);
    for (int r = 0; r < rows; ++r)
        for (int i = v.row_ptr[r]; i < v.row_ptr[r + 1]; ++i) {
            const int c = v.col[i];
            const double x = v.val[i];
            for (int t = 0; t < k; ++t) wtv.at(t, c) += w.at(r, t) * x;
        }

    DenseMatrix gram(k, k); // W'W
    for (int r = 0; r < rows; ++r)
        for (int a = 0; a < k; ++a) {
            const double wa = w.at(r, a);
            if (wa == 0.0) continue;
            for (int b = 0; b < k; ++b) gram.at(a, b) += wa * w.at(r, b);
        }

    std::vector<double> denom(k);
    for (int c = 0; c < cols; ++c) {
        // column c of W'WH depends only on column c of the old H
        for (int a = 0; a < k; ++a) {
            double s = 0.0;
            for (int b = 0; b < k; ++b) s += gram.at(a, b) * h.at(b, c);
            denom[a] = s;
        }
        for (int a = 0; a < k; ++a) h.at(a, c) *= wtv.at(a, c) / (denom[a] + eps);
    }

    // W <- W .* (VH') ./ (WHH' + eps)
    DenseMatrix vht(rows, k);
    for (int r = 0; r < rows; ++r)
        for (int i = v.row_ptr[r]; i < v.row_ptr[r + 1]; ++i) {
            const int c = v.col[i];
            const double x = v.val[i];
            for (int t = 0; t < k; ++t) vht.at(r, t) += x * h.at(t, c);
        }

    DenseMatrix hht(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = a; b < k; ++b) {
            double s = 0.0;
            for (int c = 0; c < cols; ++c) s += h.at(a, c) * h.at(b, c);
            hht.at(a, b) = s;
            hht.at(b, a) = s;
        }

    for (int r = 0; r < rows; ++r) {
        // row r of WHH' depends only on row r of the old W
        for (int a = 0; a < k; ++a) {
            double s = 0.0;
            for (int b = 0; b < k; ++b) s += w.at(r, b) * hht.at(b, a);
            denom[a] = s;
        }
        for (int a = 0; a < k; ++a) w.at(r, a) *= vht.at(r, a) / (denom[a] + eps);
    }
}

double frobenius_objective(const CsrMatrix& v, const DenseMatrix& w, const DenseMatrix& h) {
    const int k = w.cols;
    std::vector<double> approx(v.cols);
    double total = 0.0;
    for (int r = 0; r < v.rows; ++r) {
        std::fill(approx.begin(), approx.end(), 0.0);
        for (int t = 0; t < k; ++t) {
            const double wt = w.at(r, t);
            if (wt == 0.0) continue;
            const double* hrow = h.data.data() + static_cast<size_t>(t) * v.cols;
            for (int c = 0; c < v.cols; ++c) approx[c] += wt * hrow[c];
        }
        for (int i = v.row_ptr[r]; i < v.row_ptr[r + 1]; ++i) approx[v.col[i]] -= v.val[i];
        for (int c = 0; c < v.cols; ++c) total += approx[c] * approx[c];
    }
    return total;
}

NmfResult nmf_train(const CsrMatrix& v, const NmfConfig& cfg) {
    auto [w, h] = nmf_init(v, cfg);

    NmfResult result;
    result.config = cfg;
    result.objective_trace.push_back(frobenius_objective(v, w, h));

    for (int iter = 1; iter <= cfg.max_iter; ++iter) {
        nmf_update(v, w, h, cfg.eps);
        double obj = frobenius_objective(v, w, h);
        double prev = result.objective_trace.back();
        result.objective_trace.push_back(obj);
        result.iterations_run = iter;
        double rel = std::abs(prev - obj) / std::max(prev, DBL_MIN);
        if (rel < cfg.tol) break;
    }

    result.w = std::move(w);
    result.h = std::move(h);
    return result;
}

NormalizedFactors normalize_factors(const NmfResult& result) {
    const int k = result.h.rows;
    const int cols = result.h.cols;
    const int rows = result.w.rows;

    NormalizedFactors out;
    out.topic_word = DenseMatrix(k, cols);
    out.doc_topic = DenseMatrix(rows, k);

    std::vector<double> scale(k);
    for (int t = 0; t < k; ++t) {
        double s = 0.0;
        for (int c = 0; c < cols; ++c) s += result.h.at(t, c);
        scale[t] = s;
        if (s == 0.0) {
            out.uniform_topic_rows.push_back(t);
            for (int c = 0; c < cols; ++c) out.topic_word.at(t, c) = 1.0 / cols;
        } else {
            for (int c = 0; c < cols; ++c) out.topic_word.at(t, c) = result.h.at(t, c) / s;
        }
    }

    for (int r = 0; r < rows; ++r) {
        double row_sum = 0.0;
        for (int t = 0; t < k; ++t) {
            double v = result.w.at(r, t) * scale[t];
            out.doc_topic.at(r, t) = v;
            row_sum += v;
        }
        if (row_sum == 0.0) {
            out.uniform_doc_rows.push_back(r);
            for (int t = 0; t < k; ++t) out.doc_topic.at(r, t) = 1.0 / k;
        } else {
            for (int t = 0; t < k; ++t) out.doc_topic.at(r, t) /= row_sum;
        }
    }
    return out;
}

} // namespace themeforge
