#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lorentz/decomposition.hpp"

namespace lorentz {

namespace {

long double column_sum(const Column& col) {
    long double acc = 0.0L;
    for (const auto& r : col) acc += static_cast<long double>(r.count) * r.value;
    return acc;
}

std::uint64_t column_rows(const Column& col) {
    std::uint64_t n = 0;
    for (const auto& r : col) n += r.count;
    return n;
}

// Min-tree over column sums; finds the first index >= lo with sum < x.
class MinTree {
public:
    explicit MinTree(const std::vector<long double>& v) : n_(v.size()) {
        size_ = 1;
        while (size_ < n_) size_ <<= 1;
        t_.assign(2 * size_, std::numeric_limits<long double>::infinity());
        for (std::size_t i = 0; i < n_; ++i) t_[size_ + i] = v[i];
        for (std::size_t i = size_ - 1; i >= 1; --i) t_[i] = std::min(t_[2 * i], t_[2 * i + 1]);
    }

    void set(std::size_t i, long double v) {
        i += size_;
        t_[i] = v;
        for (i >>= 1; i >= 1; i >>= 1) t_[i] = std::min(t_[2 * i], t_[2 * i + 1]);
    }

    std::size_t first_below(std::size_t lo, long double x) const { return find(1, 0, size_, lo, x); }

    std::size_t npos() const { return n_; }

private:
    std::size_t find(std::size_t node, std::size_t l, std::size_t r, std::size_t lo, long double x) const {
        if (r <= lo || !(t_[node] < x)) return n_;
        if (r - l == 1) return l < n_ ? l : n_;
        std::size_t mid = (l + r) / 2;
        std::size_t left = find(2 * node, l, mid, lo, x);
        if (left != n_) return left;
        return find(2 * node + 1, mid, r, lo, x);
    }

    std::size_t n_;
    std::size_t size_;
    std::vector<long double> t_;
};

// Splits col into rows [0, m) and [m, end).
std::pair<Column, Column> split(const Column& col, std::uint64_t m) {
    Column head, tail;
    std::uint64_t seen = 0;
    for (const auto& r : col) {
        if (seen >= m) {
            tail.push_back(r);
        } else if (seen + r.count <= m) {
            head.push_back(r);
        } else {
            std::uint64_t k = m - seen;
            head.push_back({k, r.value, r.src});
            tail.push_back({r.count - k, r.value, r.src});
        }
        seen += r.count;
    }
    return {std::move(head), std::move(tail)};
}

void append(Column& out, const Column& in) {
    for (const auto& r : in) {
        if (!out.empty() && out.back().src == r.src && out.back().value == r.value) {
            out.back().count += r.count;
        } else {
            out.push_back(r);
        }
    }
}

// Least m >= 1 with gamma_m < alpha, where gamma_m swaps the first m rows
// of column c for those of column s.
std::uint64_t crossing_row(const Column& c, const Column& s, long double gamma0, long double alpha,
                           std::uint64_t rows) {
    std::size_t i = 0, j = 0;
    std::uint64_t ri = c.empty() ? 0 : c[0].count;
    std::uint64_t rj = s.empty() ? 0 : s[0].count;
    std::uint64_t m = 0;
    long double gamma = gamma0;
    while (i < c.size() && j < s.size()) {
        std::uint64_t seg = std::min(ri, rj);
        long double d = static_cast<long double>(s[j].value) - c[i].value;
        if (d < 0.0L) {
            long double need = (gamma - alpha) / (-d);
            std::uint64_t k;
            if (need < 0.0L) {
                k = 1;
            } else if (need >= static_cast<long double>(seg)) {
                k = seg + 1;
            } else {
                k = static_cast<std::uint64_t>(std::floor(need)) + 1;
                while (k > 1 && gamma + static_cast<long double>(k - 1) * d < alpha) --k;
                while (k <= seg && !(gamma + static_cast<long double>(k) * d < alpha)) ++k;
            }
            if (k <= seg) return m + k;
        }
        gamma += static_cast<long double>(seg) * d;
        m += seg;
        ri -= seg;
        rj -= seg;
        if (ri == 0 && ++i < c.size()) ri = c[i].count;
        if (rj == 0 && ++j < s.size()) rj = s[j].count;
    }
    return rows;
}

}  // namespace

RunShuffleStats shuffle_columns(std::vector<Column>& columns, const std::vector<double>& alphas) {
    const std::size_t nu = columns.size();
    if (alphas.size() != nu) throw InvalidArgument("shuffle: alphas and columns differ in length");
    RunShuffleStats st;
    if (nu == 0) return st;
    const std::uint64_t rows = column_rows(columns[0]);
    for (std::size_t k = 0; k < nu; ++k) {
        if (column_rows(columns[k]) != rows) throw InvalidArgument("shuffle: ragged columns");
        for (const auto& r : columns[k])
            if (!(r.value > 0.0) || !std::isfinite(r.value)) throw InvalidArgument("shuffle: entries must be positive");
        if (!(alphas[k] > 0.0)) throw InvalidArgument("shuffle: alphas must be positive");
        if (k > 0 && alphas[k] > alphas[k - 1]) throw InvalidArgument("shuffle: alphas must be non-increasing");
    }
    std::vector<long double> beta(nu);
    long double total = 0.0L;
    for (double a : alphas) total += a;
    long double pb = 0.0L, pa = 0.0L;
    for (std::size_t k = 0; k < nu; ++k) {
        beta[k] = column_sum(columns[k]);
        pb += beta[k];
        pa += alphas[k];
        if (pb < pa - 1e-12L * total) {
            std::ostringstream os;
            os << "shuffle: prefix domination fails at column " << k;
            throw InvalidArgument(os.str());
        }
    }
    MinTree tree(beta);
    for (std::size_t c = 0; c < nu; ++c) {
        const long double a = alphas[c];
        std::size_t s = tree.first_below(c + 1, a);
        if (s == tree.npos()) break;  // every later column already covers alpha_c >= alpha_k
        std::uint64_t m0 = crossing_row(columns[c], columns[s], beta[c], a, rows);
        auto [hc, tc] = split(columns[c], m0);
        auto [hs, ts] = split(columns[s], m0);
        Column nc, ns;
        append(nc, hs);
        append(nc, tc);
        append(ns, hc);
        append(ns, ts);
        columns[c] = std::move(nc);
        columns[s] = std::move(ns);
        beta[c] = column_sum(columns[c]);
        beta[s] = column_sum(columns[s]);
        tree.set(s, beta[s]);
        ++st.swaps;
    }
    st.beta_tilde.resize(nu);
    for (std::size_t k = 0; k < nu; ++k) st.beta_tilde[k] = static_cast<double>(column_sum(columns[k]));
    return st;
}

double ShuffleInstance::eta_max() const {
    double m = 0.0;
    for (const auto& row : eta)
        for (double x : row) m = std::max(m, x);
    return m;
}

ShuffleResult matrix_shuffle(const ShuffleInstance& inst) {
    const std::size_t N = inst.eta.size();
    const std::size_t nu = inst.alphas.size();
    if (N == 0 || nu == 0) throw InvalidArgument("matrix_shuffle: empty instance");
    for (const auto& row : inst.eta)
        if (row.size() != nu) throw InvalidArgument("matrix_shuffle: every row needs nu entries");
    std::vector<Column> cols(nu);
    for (std::size_t k = 0; k < nu; ++k)
        for (std::size_t j = 0; j < N; ++j)
            cols[k].push_back({1, inst.eta[j][k], static_cast<std::uint32_t>(k)});
    RunShuffleStats st = shuffle_columns(cols, inst.alphas);

    ShuffleResult r;
    r.perms.assign(N, std::vector<std::size_t>(nu));
    r.permuted.assign(N, std::vector<double>(nu));
    for (std::size_t k = 0; k < nu; ++k) {
        std::size_t j = 0;
        for (const auto& run : cols[k])
            for (std::uint64_t t = 0; t < run.count; ++t, ++j) {
                r.perms[j][k] = run.src;
                r.permuted[j][k] = run.value;
            }
    }
    r.beta_tilde = std::move(st.beta_tilde);
    return r;
}

}  // namespace lorentz
