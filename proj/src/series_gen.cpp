#include "borel/series_gen.hpp"

#include <json.hpp>

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace borel::series {

ExactRational BivariateSeries::get(int n, int m) const {
    auto it = coeffs_.find({n, m});
    return it == coeffs_.end() ? ExactRational(0) : it->second;
}

void BivariateSeries::set(int n, int m, ExactRational value) {
    max_n_ = std::max(max_n_, n);
    max_m_ = std::max(max_m_, m);
    coeffs_[{n, m}] = std::move(value);
}

namespace {

using CacheKey = std::tuple<std::string, std::string, std::string>;

struct WCache {
    std::mutex mutex;
    std::map<CacheKey, std::vector<ExactRational>> entries;
};

WCache& w_cache() {
    static WCache cache;
    return cache;
}

// Dense triangular store indexed [n][m]; out-of-range reads are zero.
class Table {
public:
    explicit Table(int n_max) : rows_(static_cast<std::size_t>(n_max + 1)) {}

    const ExactRational& get(int n, int m) const {
        static const ExactRational zero(0);
        if (n < 0 || m < 0 || n >= static_cast<int>(rows_.size())) return zero;
        const auto& row = rows_[static_cast<std::size_t>(n)];
        return m < static_cast<int>(row.size()) ? row[static_cast<std::size_t>(m)] : zero;
    }

    void set(int n, int m, ExactRational v) {
        auto& row = rows_.at(static_cast<std::size_t>(n));
        if (static_cast<int>(row.size()) <= m) row.resize(static_cast<std::size_t>(m + 1));
        row[static_cast<std::size_t>(m)] = std::move(v);
    }

    // Coefficient of t^k in a_i(t) * a_j(t).
    ExactRational product(int i, int j, int k) const {
        ExactRational sum(0);
        for (int t = 0; t <= k; ++t) {
            const auto& x = get(i, t);
            if (x == 0) continue;
            const auto& y = get(j, k - t);
            if (y == 0) continue;
            sum += x * y;
        }
        return sum;
    }

    int rows() const { return static_cast<int>(rows_.size()); }

private:
    std::vector<std::vector<ExactRational>> rows_;
};

// Semi-classical a_{n,m} for every n + m <= bound (n >= 3).
Table semiclassical_table(int bound) {
    Table a(bound + 1);
    a.set(1, 0, ExactRational(-1, 2));
    a.set(2, 0, ExactRational(-1, 8));
    for (int m = 0; m <= bound - 3; ++m) {
        for (int n = 3; n + m <= bound; ++n) {
            // a_1 a_n pairs contribute -4n a_{n,m}; a_{n,m} is still unset here.
            ExactRational s(0);
            if (m >= 1) s += ExactRational(2 * (n + 1) * (2 * n + 1)) * a.get(n + 1, m - 1);
            for (int j = 1; j <= n; ++j) s += ExactRational(4 * j * (n - j + 1)) * a.product(j, n - j + 1, m);
            a.set(n, m, s / (4 * n));
        }
    }
    return a;
}

}  // namespace

WSeries extend_w_series(const ExactRational& a1, const ExactRational& a2, const ExactRational& a3, int n_max) {
    if (n_max < 3) throw std::invalid_argument("extend_w_series: n_max must be >= 3");
    CacheKey key{rational_to_string(a1), rational_to_string(a2), rational_to_string(a3)};
    auto& cache = w_cache();
    {
        std::lock_guard lock(cache.mutex);
        auto it = cache.entries.find(key);
        if (it != cache.entries.end() && static_cast<int>(it->second.size()) >= n_max) {
            return WSeries{{it->second.begin(), it->second.begin() + n_max}};
        }
    }
    std::vector<ExactRational> a(static_cast<std::size_t>(n_max));
    a[0] = a1;
    a[1] = a2;
    a[2] = a3;
    apply_w_recurrence(a);
    {
        std::lock_guard lock(cache.mutex);
        auto& slot = cache.entries[key];
        if (slot.size() < a.size()) slot = a;
    }
    return WSeries{std::move(a)};
}

std::pair<BivariateSeries, ScalarSeries> bender_wu_expand(int n_max, int m_max) {
    if (n_max < 1 || m_max < 1) throw std::invalid_argument("bender_wu_expand: orders must be >= 1");
    // a_n starts at g^{n-1}, so order k touches n <= k + 1.
    Table a(m_max + 3);
    a.set(1, 0, ExactRational(-1, 2));
    for (int k = 1; k <= m_max; ++k) {
        // Recurrence at index n fixes a_{n,k} from a_{n+1,k}; walk downwards.
        for (int n = k + 1; n >= 3; --n) {
            ExactRational s = ExactRational(2 * (n + 1) * (2 * n + 1)) * a.get(n + 1, k);
            for (int m = 1; m <= n; ++m) s += ExactRational(4 * m * (n - m + 1)) * a.product(m, n - m + 1, k);
            a.set(n, k, s / (4 * n));
        }
        // -30 a_3 - 16 a_1 a_2 + g = 0, with a_{1,0} a_{2,k} = -a_{2,k}/2.
        ExactRational s3 = ExactRational(30) * a.get(3, k) + ExactRational(16) * a.product(1, 2, k);
        if (k == 1) s3 -= 1;
        a.set(2, k, s3 / 8);
        // -12 a_2 - 4 a_1^2 + rho = 0, with 2 a_{1,0} a_{1,k} = -a_{1,k}.
        ExactRational s2 = ExactRational(12) * a.get(2, k) + ExactRational(4) * a.product(1, 1, k);
        a.set(1, k, s2 / 4);
    }

    BivariateSeries out(Flavor::BenderWu, 0);
    for (int n = 1; n <= n_max; ++n) {
        for (int m = std::max(0, n - 1); m <= m_max; ++m) {
            const auto& v = a.get(n, m);
            if (n <= m + 1) out.set(n, m, v);
        }
    }
    ScalarSeries energy{Variable::G, {}};
    for (int k = 0; k <= m_max; ++k) energy.coeffs.push_back(ExactRational(-2) * a.get(1, k));
    return {std::move(out), std::move(energy)};
}

std::pair<BivariateSeries, ScalarSeries> semiclassical_expand(int n_max, int m_max) {
    if (n_max < 3 || m_max < 0) throw std::invalid_argument("semiclassical_expand: need n_max >= 3, m_max >= 0");
    const int bound = std::max(n_max + m_max, m_max + 2);
    Table a = semiclassical_table(bound);

    BivariateSeries out(Flavor::Semiclassical, 0);
    for (int n = 3; n <= n_max; ++n)
        for (int m = 0; m <= m_max; ++m) out.set(n, m, a.get(n, m));

    ScalarSeries b2{Variable::Hbar, {ExactRational(1)}};
    for (int k = 1; k <= m_max; ++k) b2.coeffs.push_back(ExactRational(30) * a.get(3, k - 1));
    return {std::move(out), std::move(b2)};
}

std::pair<BivariateSeries, ScalarSeries> excited_expand(int q, int n_max, int k_max) {
    if (q < 0) throw std::invalid_argument("excited_expand: q must be >= 0");
    if (n_max < 0 || k_max < 0) throw std::invalid_argument("excited_expand: orders must be >= 0");

    // c_{n,k-1} needs c_{n+2,k-2}, so the x-power window shrinks by 2 per order.
    const int top = std::max(n_max, q) + 2 * k_max + 4;
    Table a = semiclassical_table(top / 2 + k_max + 4);
    Table c(top + 2);
    std::vector<ExactRational> b3(static_cast<std::size_t>(k_max + 1), ExactRational(0));

    c.set(q, 0, ExactRational(1));
    if (k_max >= 1) b3[1] = ExactRational(-2 * q);

    // Coefficient of hbar^k x^n in -hbar^2 P'' - 2 hbar W' P' + b_3 P:
    //   -sum_i b_{3,i} c_{n,k-i} + (n+2)(n+1) c_{n+2,k-2}
    //   + 4 sum_m sum_i m (n+2-2m) a_{m,i} c_{n+2-2m,k-1-i} = 0   (sign-flipped).
    // The c_{n,k-1} coefficient is 2q - 2n, so n != q yields c_{n,k-1} and
    // n == q yields b_{3,k}.
    for (int k = 1; k <= k_max + 1; ++k) {
        for (int n = q % 2; n <= top - 2 * k; n += 2) {
            if (n != q && k == 1 && n < q) continue;  // c_{n,0} = 0 below the leading power
            ExactRational s(0);
            for (int i = 1; i <= std::min(k, k_max); ++i) {
                if (i == k && n == q) continue;
                s -= b3[static_cast<std::size_t>(i)] * c.get(n, k - i);
            }
            if (k >= 2) s += ExactRational((n + 2) * (n + 1)) * c.get(n + 2, k - 2);
            for (int m = 1; m <= (n + 1) / 2; ++m) {
                const int j = n + 2 - 2 * m;
                for (int i = 0; i <= k - 1; ++i) {
                    if (m == 1 && i == 0 && j == n) continue;  // the unknown's own term
                    const auto& am = a.get(m, i);
                    if (am == 0) continue;
                    const auto& cj = c.get(j, k - 1 - i);
                    if (cj == 0) continue;
                    s += ExactRational(4 * m * j) * am * cj;
                }
            }
            if (n == q) {
                if (k >= 2 && k <= k_max) b3[static_cast<std::size_t>(k)] = s;
            } else {
                // (2q - 2n) c_{n,k-1} + s = 0 after including -b_{3,1} c_{n,k-1}
                // and the m = 1, i = 0 term 4 n a_{1,0} c_{n,k-1} = -2n c_{n,k-1}.
                c.set(n, k - 1, -s / (2 * q - 2 * n));
            }
        }
    }

    BivariateSeries out(Flavor::Excited, q);
    for (int n = q % 2; n <= n_max; n += 2)
        for (int k = 0; k <= k_max; ++k) out.set(n, k, c.get(n, k));
    ScalarSeries b3s{Variable::Hbar, std::move(b3)};
    return {std::move(out), std::move(b3s)};
}

std::string to_json(const ScalarSeries& s) {
    nlohmann::json j;
    j["variable"] = s.variable == Variable::G ? "g" : "hbar";
    auto& arr = j["coeffs"] = nlohmann::json::array();
    for (const auto& c : s.coeffs) arr.push_back(rational_to_string(c));
    return j.dump();
}

ScalarSeries scalar_series_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    ScalarSeries s;
    const auto var = j.at("variable").get<std::string>();
    if (var == "g")
        s.variable = Variable::G;
    else if (var == "hbar")
        s.variable = Variable::Hbar;
    else
        throw std::invalid_argument("unknown series variable '" + var + "'");
    for (const auto& c : j.at("coeffs")) s.coeffs.push_back(parse_rational(c.get<std::string>()));
    return s;
}

std::vector<ExactRational> w_inverse_s_coeffs(const WSeries& w) {
    std::vector<ExactRational> c(static_cast<std::size_t>(2 * w.order() + 1), ExactRational(0));
    for (int n = 1; n <= w.order(); ++n) c[static_cast<std::size_t>(2 * n)] = w.a(n);
    return c;
}

}  // namespace borel::series
