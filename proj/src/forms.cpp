#include "topospec/forms.hpp"

#include <map>
#include <mutex>

namespace topospec {

int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return static_cast<int>(r);
}

namespace {

std::vector<int> build_combos(int n, int p) {
    std::vector<int> table;
    if (p == 0) return table; // single empty combo, no entries
    std::vector<int> c(p);
    for (int i = 0; i < p; ++i) c[i] = i;
    while (true) {
        table.insert(table.end(), c.begin(), c.end());
        int i = p - 1;
        while (i >= 0 && c[i] == n - p + i) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < p; ++j) c[j] = c[j - 1] + 1;
    }
    return table;
}

// All tables for n, p <= kMaxDim are built once; lookups are lock-free.
const std::vector<int>& combo_table(int n, int p) {
    static const auto tables = [] {
        std::array<std::array<std::vector<int>, kMaxDim + 1>, kMaxDim + 1> t;
        for (int nn = 0; nn <= kMaxDim; ++nn)
            for (int pp = 0; pp <= nn; ++pp) t[nn][pp] = build_combos(nn, pp);
        return t;
    }();
    if (n < 0 || n > kMaxDim || p < 0 || p > n)
        throw InvalidParameter("index-set parameters out of range");
    return tables[n][p];
}

} // namespace

std::span<const int> IndexSets::combos(int n, int p) {
    const auto& t = combo_table(n, p);
    return {t.data(), t.size()};
}

std::span<const int> IndexSets::combo(int n, int p, int rank) {
    const auto& t = combo_table(n, p);
    return {t.data() + static_cast<size_t>(rank) * p, static_cast<size_t>(p)};
}

int IndexSets::rank(int n, std::span<const int> combo) {
    const int p = static_cast<int>(combo.size());
    if (p == 0) return 0;
    // Combinatorial ranking in lexicographic order.
    int r = 0;
    int prev = -1;
    for (int i = 0; i < p; ++i) {
        for (int v = prev + 1; v < combo[i]; ++v)
            r += binomial(n - 1 - v, p - 1 - i);
        prev = combo[i];
    }
    return r;
}

InsertResult insert_index(int n, std::span<const int> combo, int idx) {
    const int p = static_cast<int>(combo.size());
    std::array<int, kMaxDim> merged{};
    int pos = 0;
    while (pos < p && combo[pos] < idx) {
        merged[pos] = combo[pos];
        ++pos;
    }
    if (pos < p && combo[pos] == idx) return {};
    merged[pos] = idx;
    for (int i = pos; i < p; ++i) merged[i + 1] = combo[i];
    InsertResult res;
    res.sign = (pos % 2 == 0) ? 1 : -1;
    res.rank = IndexSets::rank(n, std::span<const int>(merged.data(),
                                                       static_cast<size_t>(p + 1)));
    return res;
}

PFormField scalar_as_0form(int dim, ScalarField f) {
    return PFormField(dim, 0,
                      [f = std::move(f)](std::span<const double> x,
                                         std::span<double> out) { out[0] = f(x); });
}

PFormField constant_form(int dim, int degree, std::vector<double> comps) {
    if (static_cast<int>(comps.size()) != binomial(dim, degree))
        throw InvalidParameter("component count != binomial(dim, degree)");
    return PFormField(dim, degree,
                      [c = std::move(comps)](std::span<const double>,
                                             std::span<double> out) {
                          for (size_t i = 0; i < c.size(); ++i) out[i] = c[i];
                      });
}

PFormField scaled_form(const PFormField& w, double factor) {
    return PFormField(w.dim, w.degree,
                      [inner = w.components, factor](std::span<const double> x,
                                                     std::span<double> out) {
                          inner(x, out);
                          for (auto& v : out) v *= factor;
                      });
}

} // namespace topospec
