#include "edgetest/covcov.hpp"

#include "edgetest/errors.hpp"

#include <algorithm>
#include <charconv>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>

namespace edgetest {

CaseId classify_case(Index i, Index j, Index k, Index l) {
    std::pair<Index, Index> a = std::minmax(i, j);
    std::pair<Index, Index> b = std::minmax(k, l);
    if (b < a) std::swap(a, b);
    const bool diag_a = a.first == a.second;
    const bool diag_b = b.first == b.second;

    if (diag_a && diag_b) {
        if (a.first == b.first) return {7, {a.first, a.first, a.first, a.first}};
        return {2, {a.first, a.first, b.first, b.first}};
    }
    if (diag_a || diag_b) {
        const Index s = diag_a ? a.first : b.first;
        const auto off = diag_a ? b : a;
        if (s == off.first) return {6, {s, s, s, off.second}};
        if (s == off.second) return {6, {s, s, s, off.first}};
        return {3, {s, s, off.first, off.second}};
    }
    if (a == b) return {5, {a.first, a.second, a.first, a.second}};

    // Two off-diagonal pairs: look for a shared index.
    for (Index s : {a.first, a.second}) {
        if (s == b.first || s == b.second) {
            const Index u = (s == a.first) ? a.second : a.first;
            const Index v = (s == b.first) ? b.second : b.first;
            return {4, {s, std::min(u, v), s, std::max(u, v)}};
        }
    }
    return {1, {a.first, a.second, b.first, b.second}};
}

namespace {

// Formulas are written against a generic lookup `m({...})` so the same code
// both evaluates zeta_1 and enumerates the moments it touches.

template <class M>
double case1(const M& m, Index i, Index j, Index k, Index l) {
    const double mi = m({i}), mj = m({j}), mk = m({k}), ml = m({l});
    return 0.25 * (m({i, j, k, l}) - mi * m({j, k, l}) - mj * m({i, k, l}) - mk * m({i, j, l}) +
                   mi * mk * m({j, l}) + mj * mk * m({i, l}) - m({i, j, k}) * ml +
                   mi * ml * m({j, k}) + mj * ml * m({i, k}) -
                   (m({i, j}) - 2.0 * mi * mj) * (m({k, l}) - 2.0 * mk * ml));
}

template <class M>
double case2(const M& m, Index i, Index k) {
    const double mi = m({i}), mk = m({k});
    return 0.25 * (m({i, i, k, k}) - 2.0 * mi * m({i, k, k}) - 2.0 * m({i, i, k}) * mk +
                   4.0 * m({i, k}) * mi * mk -
                   (m({i, i}) - 2.0 * mi * mi) * (m({k, k}) - 2.0 * mk * mk));
}

template <class M>
double case3(const M& m, Index i, Index k, Index l) {
    const double mi = m({i}), mk = m({k}), ml = m({l});
    return 0.25 * (m({i, i, k, l}) - 2.0 * m({i, k, l}) * mi - m({i, i, l}) * mk +
                   2.0 * m({i, l}) * mi * mk - m({i, i, k}) * ml + 2.0 * m({i, k}) * mi * ml -
                   (m({i, i}) - 2.0 * mi * mi) * (m({k, l}) - 2.0 * mk * ml));
}

template <class M>
double case4(const M& m, Index i, Index j, Index l) {
    const double mi = m({i}), mj = m({j}), ml = m({l});
    return 0.25 * (m({i, i, j, l}) - mi * m({j, i, l}) - m({i, i, l}) * mj - m({i, j, l}) * mi +
                   mi * mi * m({j, l}) + m({i, l}) * mj * mi - m({i, i, j}) * ml +
                   mi * m({j, i}) * ml + m({i, i}) * mj * ml -
                   (m({i, j}) - 2.0 * mi * mj) * (m({i, l}) - 2.0 * mi * ml));
}

template <class M>
double case5(const M& m, Index i, Index j) {
    const double mi = m({i}), mj = m({j});
    const double centered = m({i, j}) - 2.0 * mi * mj;
    return 0.25 * (m({i, i, j, j}) - 2.0 * m({i, j, j}) * mi + mi * mi * m({j, j}) -
                   2.0 * m({i, i, j}) * mj + 2.0 * mi * mj * m({j, i}) + m({i, i}) * mj * mj -
                   centered * centered);
}

template <class M>
double case6(const M& m, Index i, Index l) {
    const double mi = m({i}), ml = m({l});
    return 0.25 * (m({i, i, i, l}) - 3.0 * m({i, i, l}) * mi + 2.0 * m({i, l}) * mi * mi -
                   m({i, i, i}) * ml + 2.0 * m({i, i}) * mi * ml -
                   (m({i, i}) - 2.0 * mi * mi) * (m({i, l}) - 2.0 * mi * ml));
}

template <class M>
double case7(const M& m, Index i) {
    const double mi = m({i});
    const double centered = m({i, i}) - 2.0 * mi * mi;
    return 0.25 * (m({i, i, i, i}) - 4.0 * m({i, i, i}) * mi + 4.0 * m({i, i}) * mi * mi -
                   centered * centered);
}

template <class M>
double evaluate(const CaseId& c, const M& m) {
    const auto& t = c.tuple;
    switch (c.value) {
        case 1: return case1(m, t[0], t[1], t[2], t[3]);
        case 2: return case2(m, t[0], t[2]);
        case 3: return case3(m, t[0], t[2], t[3]);
        case 4: return case4(m, t[0], t[1], t[3]);
        case 5: return case5(m, t[0], t[1]);
        case 6: return case6(m, t[0], t[3]);
        case 7: return case7(m, t[0]);
        default: throw ConfigError("case id must be in 1..7, got " + std::to_string(c.value));
    }
}

struct StoreLookup {
    const MomentStore& store;
    double operator()(std::initializer_list<Index> idx) const { return store(idx); }
};

struct DemandRecorder {
    std::vector<MomentKey>& keys;
    double operator()(std::initializer_list<Index> idx) const {
        keys.emplace_back(idx);
        return 0.0;
    }
};

double first_order_factor(Index n) {
    if (n < 3) {
        throw InsufficientDataError("covariance of U-statistics needs n >= 3, got " +
                                    std::to_string(n));
    }
    // C(n,2)^{-1} * 2(n-2) = 4(n-2) / (n(n-1))
    const double nd = static_cast<double>(n);
    return 4.0 * (nd - 2.0) / (nd * (nd - 1.0));
}

void dedupe(std::vector<MomentKey>& keys) {
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
}

}  // namespace

double zeta1(const CaseId& c, const MomentStore& store) {
    return evaluate(c, StoreLookup{store});
}

double zeta1_general(const MomentStore& store, Index i, Index j, Index k, Index l) {
    return case1(StoreLookup{store}, i, j, k, l);
}

double covcov_entry(Index i, Index j, Index k, Index l, const MomentStore& store, Index n) {
    const double factor = first_order_factor(n);
    return factor * zeta1(classify_case(i, j, k, l), store);
}

CovCovMatrix::CovCovMatrix(Index p, Eigen::MatrixXd values)
    : p_(p), q_(upper_size(p)), values_(std::move(values)) {
    if (static_cast<Index>(values_.rows()) != q_ || static_cast<Index>(values_.cols()) != q_) {
        throw ConfigError("covcov matrix must be " + std::to_string(q_) + "x" +
                          std::to_string(q_));
    }
}

Index CovCovMatrix::flat_index(Index i, Index j) const {
    if (i > j) std::swap(i, j);
    if (j >= p_) throw ConfigError("variate index out of range");
    // Rows before i hold p + (p-1) + ... + (p-i+1) entries.
    return i * p_ - i * (i - 1) / 2 + (j - i);
}

std::pair<Index, Index> CovCovMatrix::pair_of(Index flat) const {
    if (flat >= q_) throw ConfigError("flat index out of range");
    Index i = 0;
    while (flat >= p_ - i) {
        flat -= p_ - i;
        ++i;
    }
    return {i, i + flat};
}

double CovCovMatrix::operator()(Index i, Index j, Index k, Index l) const {
    return values_(static_cast<Eigen::Index>(flat_index(i, j)),
                   static_cast<Eigen::Index>(flat_index(k, l)));
}

std::vector<MomentKey> covcov_moment_demand(Index p) {
    std::vector<MomentKey> keys;
    DemandRecorder rec{keys};
    for (Index i = 0; i < p; ++i)
        for (Index j = i; j < p; ++j)
            for (Index k = i; k < p; ++k)
                for (Index l = k; l < p; ++l) evaluate(classify_case(i, j, k, l), rec);
    dedupe(keys);
    return keys;
}

std::vector<MomentKey> covcov_diagonal_moment_demand(Index p) {
    std::vector<MomentKey> keys;
    DemandRecorder rec{keys};
    for (Index i = 0; i < p; ++i)
        for (Index j = i; j < p; ++j) evaluate(classify_case(i, j, i, j), rec);
    dedupe(keys);
    return keys;
}

CovCovMatrix covcov_matrix(const MomentStore& store, Index n, Index p) {
    const double factor = first_order_factor(n);
    const Index q = upper_size(p);
    std::vector<std::pair<Index, Index>> pairs;
    pairs.reserve(q);
    for (Index i = 0; i < p; ++i)
        for (Index j = i; j < p; ++j) pairs.emplace_back(i, j);

    const auto eq = static_cast<Eigen::Index>(q);
    Eigen::MatrixXd values(eq, eq);
    const StoreLookup lookup{store};
    for (Index r = 0; r < q; ++r) {
        for (Index c = r; c < q; ++c) {
            const auto [i, j] = pairs[r];
            const auto [k, l] = pairs[c];
            const double v = factor * evaluate(classify_case(i, j, k, l), lookup);
            values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
            values(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(r)) = v;
        }
    }
    return CovCovMatrix(p, std::move(values));
}

Eigen::VectorXd covcov_diagonal(const MomentStore& store, Index n, Index p) {
    const double factor = first_order_factor(n);
    Eigen::VectorXd diag(static_cast<Eigen::Index>(upper_size(p)));
    const StoreLookup lookup{store};
    Eigen::Index flat = 0;
    for (Index i = 0; i < p; ++i)
        for (Index j = i; j < p; ++j) diag(flat++) = factor * evaluate(classify_case(i, j, i, j), lookup);
    return diag;
}

CovCovMatrix covcov_from_data(const SampleMatrix& x) {
    const auto keys = covcov_moment_demand(x.cols());
    const auto store = build_moments(x, keys);
    return covcov_matrix(store, x.rows(), x.cols());
}

namespace {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

void write_covcov_csv(std::ostream& out, const CovCovMatrix& c) {
    const Index q = c.size();
    out << "pair";
    for (Index f = 0; f < q; ++f) {
        const auto [i, j] = c.pair_of(f);
        out << ',' << i << '-' << j;
    }
    out << '\n';
    for (Index r = 0; r < q; ++r) {
        const auto [i, j] = c.pair_of(r);
        out << i << '-' << j;
        for (Index col = 0; col < q; ++col) {
            out << ',' << format_double(c.values()(static_cast<Eigen::Index>(r),
                                                   static_cast<Eigen::Index>(col)));
        }
        out << '\n';
    }
}

}  // namespace edgetest
