#include <swf/series.hpp>

#include <map>
#include <mutex>
#include <numeric>

namespace swf
{

// ---------------------------------------------------------------------------
// MonomialBasis

namespace
{

void enumerate(int n, int remaining, int pos, std::vector<int> &cur, std::vector<int> &out)
{
    if (pos == n - 1) {
        cur[static_cast<std::size_t>(pos)] = remaining;
        out.insert(out.end(), cur.begin(), cur.end());
        return;
    }
    for (int p = remaining; p >= 0; --p) {
        cur[static_cast<std::size_t>(pos)] = p;
        enumerate(n, remaining - p, pos + 1, cur, out);
    }
}

constexpr std::size_t dense_product_limit = 1200;

} // namespace

std::shared_ptr<const MonomialBasis> MonomialBasis::get(int variables, int max_degree)
{
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const MonomialBasis>> cache;
    std::lock_guard lock(mutex);
    auto &slot = cache[{variables, max_degree}];
    if (!slot) {
        slot = std::make_shared<const MonomialBasis>(variables, max_degree);
    }
    return slot;
}

MonomialBasis::MonomialBasis(int variables, int max_degree) : m_n(variables), m_max_degree(max_degree)
{
    m_binomial_rows = max_degree + variables + 2;
    m_binomials.assign(static_cast<std::size_t>(m_binomial_rows * m_binomial_rows), 0);
    for (int r = 0; r < m_binomial_rows; ++r) {
        m_binomials[static_cast<std::size_t>(r * m_binomial_rows)] = 1;
        for (int k = 1; k <= r; ++k) {
            m_binomials[static_cast<std::size_t>(r * m_binomial_rows + k)]
                = m_binomials[static_cast<std::size_t>((r - 1) * m_binomial_rows + k - 1)]
                  + (k < r ? m_binomials[static_cast<std::size_t>((r - 1) * m_binomial_rows + k)] : 0);
        }
    }

    std::vector<int> cur(static_cast<std::size_t>(m_n));
    for (int d = 0; d <= max_degree; ++d) {
        if (m_n == 0) {
            if (d == 0) {
                m_degree.push_back(0);
            }
        } else {
            const std::size_t before = m_powers.size();
            enumerate(m_n, d, 0, cur, m_powers);
            m_degree.insert(m_degree.end(), (m_powers.size() - before) / static_cast<std::size_t>(m_n), d);
        }
        m_prefix.push_back(m_degree.size());
    }

    const std::size_t size = m_degree.size();
    m_lower.assign(size * static_cast<std::size_t>(m_n), npos);
    std::vector<int> e(static_cast<std::size_t>(m_n));
    for (std::size_t i = 0; i < size; ++i) {
        const auto ex = exponent(i);
        for (int k = 0; k < m_n; ++k) {
            if (ex[static_cast<std::size_t>(k)] > 0) {
                std::copy(ex.begin(), ex.end(), e.begin());
                --e[static_cast<std::size_t>(k)];
                m_lower[i * static_cast<std::size_t>(m_n) + static_cast<std::size_t>(k)] = index(e);
            }
        }
    }

    if (size <= dense_product_limit) {
        m_product.assign(size * size, static_cast<std::uint32_t>(-1));
        for (std::size_t i = 0; i < size; ++i) {
            for (std::size_t j = 0; j < size && m_degree[i] + m_degree[j] <= max_degree; ++j) {
                const auto a = exponent(i), b = exponent(j);
                for (int k = 0; k < m_n; ++k) {
                    e[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(k)] + b[static_cast<std::size_t>(k)];
                }
                m_product[i * size + j] = static_cast<std::uint32_t>(index(e));
            }
        }
    }
}

std::uint64_t MonomialBasis::binomial(int n, int k) const noexcept
{
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    return m_binomials[static_cast<std::size_t>(n * m_binomial_rows + k)];
}

std::size_t MonomialBasis::index(std::span<const int> e) const
{
    if (e.size() != static_cast<std::size_t>(m_n)) {
        fail(ErrorKind::configuration, "exponent has the wrong number of variables");
    }
    const int d = total_degree(e);
    if (d > m_max_degree) {
        return npos;
    }
    std::size_t pos = d > 0 ? m_prefix[static_cast<std::size_t>(d - 1)] : 0;
    int remaining = d;
    for (int i = 0; i + 1 < m_n; ++i) {
        const int p = e[static_cast<std::size_t>(i)];
        if (p < 0) {
            fail(ErrorKind::configuration, "negative exponent");
        }
        // compositions that put more than p on variable i come first
        const int rest = m_n - i - 1;
        pos += static_cast<std::size_t>(binomial(remaining - p - 1 + rest, rest));
        remaining -= p;
    }
    return pos;
}

std::size_t MonomialBasis::product_index(std::size_t i, std::size_t j) const
{
    if (!m_product.empty()) {
        return m_product[i * size() + j];
    }
    std::vector<int> e(static_cast<std::size_t>(m_n));
    const auto a = exponent(i), b = exponent(j);
    for (int k = 0; k < m_n; ++k) {
        e[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(k)] + b[static_cast<std::size_t>(k)];
    }
    return index(e);
}

// ---------------------------------------------------------------------------
// XSeries

template <class S>
void XSeries<S>::require_compatible(const XSeries &other) const
{
    if (!compatible(m_frame, other.m_frame)) {
        fail(ErrorKind::configuration, "incompatible series (variables, base point or truncation differ)");
    }
}

template <class S>
void XSeries<S>::trim()
{
    const std::size_t limit = stored_limit();
    if (m_c.size() > limit) {
        m_c.resize(limit);
    }
    while (!m_c.empty() && m_c.back() == 0) {
        m_c.pop_back();
    }
}

template <class S>
XSeries<S> XSeries<S>::constant(FramePtr<S> frame, S c)
{
    XSeries r(std::move(frame));
    r.m_c.push_back(std::move(c));
    r.trim();
    return r;
}

template <class S>
XSeries<S> XSeries<S>::variable(FramePtr<S> frame, int i)
{
    if (i < 0 || i >= frame->variables) {
        fail(ErrorKind::configuration, "variable index out of range");
    }
    Exponent e(static_cast<std::size_t>(frame->variables), 0);
    e[static_cast<std::size_t>(i)] = 1;
    return from_terms(std::move(frame), {{e, S(1)}});
}

template <class S>
XSeries<S> XSeries<S>::from_terms(FramePtr<S> frame, const std::vector<std::pair<Exponent, S>> &terms)
{
    XSeries r(std::move(frame));
    const MonomialBasis &b = r.basis();
    r.m_c.assign(b.size(), S(0));
    for (const auto &[e, c] : terms) {
        if (e.size() != static_cast<std::size_t>(r.variables())) {
            fail(ErrorKind::configuration, "monomial has the wrong number of variables");
        }
        for (int p : e) {
            if (p < 0) {
                fail(ErrorKind::configuration, "negative exponent");
            }
        }
        const std::size_t k = b.index(e);
        if (k == MonomialBasis::npos) {
            if (c != 0) {
                r.m_exact = false;
                r.m_reliable = r.max_degree();
            }
            continue;
        }
        r.m_c[k] += c;
    }
    r.trim();
    return r;
}

template <class S>
XSeries<S> XSeries<S>::from_dense(FramePtr<S> frame, std::vector<S> coeffs, int reliable, bool exact)
{
    XSeries r(std::move(frame));
    r.m_exact = exact;
    r.m_reliable = exact ? r.max_degree() : std::clamp(reliable, -1, r.max_degree());
    r.m_c = std::move(coeffs);
    if (r.m_c.size() > r.basis().size()) {
        fail(ErrorKind::configuration, "too many dense coefficients for the basis");
    }
    r.trim();
    return r;
}

template <class S>
S XSeries<S>::coeff(std::span<const int> e) const
{
    const std::size_t k = basis().index(e);
    if (k == MonomialBasis::npos || k >= m_c.size()) {
        return S(0);
    }
    return m_c[k];
}

template <class S>
S XSeries<S>::constant_term() const
{
    return m_c.empty() ? S(0) : m_c[0];
}

template <class S>
int XSeries<S>::valuation() const
{
    for (std::size_t k = 0; k < m_c.size(); ++k) {
        if (m_c[k] != 0) {
            return basis().degree(k);
        }
    }
    return m_exact ? unbounded : m_reliable + 1;
}

template <class S>
int XSeries<S>::degree() const
{
    return m_c.empty() ? -1 : basis().degree(m_c.size() - 1);
}

template <class S>
bool XSeries<S>::is_zero(double tol) const
{
    return std::all_of(m_c.begin(), m_c.end(), [tol](const S &c) { return is_negligible(c, tol); });
}

template <class S>
double XSeries<S>::max_abs() const
{
    double m = 0;
    for (const auto &c : m_c) {
        m = std::max(m, magnitude(c));
    }
    return m;
}

template <class S>
XSeries<S> XSeries<S>::operator-() const
{
    XSeries r(*this);
    for (auto &c : r.m_c) {
        c = -c;
    }
    return r;
}

template <class S>
XSeries<S> &XSeries<S>::operator+=(const XSeries &other)
{
    require_compatible(other);
    if (!(m_exact && other.m_exact)) {
        const int rel = std::min(reliable(), other.reliable());
        m_exact = false;
        m_reliable = rel;
    }
    const std::size_t limit = std::min(stored_limit(), other.m_c.size());
    if (m_c.size() < limit) {
        m_c.resize(limit, S(0));
    }
    for (std::size_t k = 0; k < limit; ++k) {
        m_c[k] += other.m_c[k];
    }
    trim();
    return *this;
}

template <class S>
XSeries<S> &XSeries<S>::operator-=(const XSeries &other)
{
    return *this += -other;
}

template <class S>
XSeries<S> &XSeries<S>::operator*=(const S &c)
{
    if (c == 0) {
        if (m_exact) {
            m_c.clear();
        } else {
            std::fill(m_c.begin(), m_c.end(), S(0));
            trim();
        }
        return *this;
    }
    for (auto &x : m_c) {
        x *= c;
    }
    return *this;
}

template <class S>
XSeries<S> XSeries<S>::multiply(const XSeries &a, const XSeries &b)
{
    a.require_compatible(b);
    const int D = a.max_degree();
    XSeries r(a.m_frame);
    const bool a_zero = a.m_exact && a.m_c.empty();
    const bool b_zero = b.m_exact && b.m_c.empty();
    if (a_zero || b_zero) {
        return r;
    }
    const long va = a.valuation(), vb = b.valuation();
    const long ea = a.m_exact ? unbounded : a.m_reliable;
    const long eb = b.m_exact ? unbounded : b.m_reliable;
    long rel = std::min<long>({static_cast<long>(D), ea + vb, eb + va});
    bool exact = a.m_exact && b.m_exact && a.degree() + b.degree() <= D;
    if (!exact) {
        r.m_exact = false;
        r.m_reliable = static_cast<int>(std::max<long>(rel, -1));
    }
    const MonomialBasis &basis = a.basis();
    const std::size_t limit = basis.count_up_to(r.reliable());
    r.m_c.assign(limit, S(0));
    const int top = r.reliable();
    for (std::size_t i = 0; i < a.m_c.size(); ++i) {
        if (a.m_c[i] == 0) {
            continue;
        }
        const int di = basis.degree(i);
        const std::size_t jmax = std::min(b.m_c.size(), basis.count_up_to(top - di));
        for (std::size_t j = 0; j < jmax; ++j) {
            if (b.m_c[j] == 0) {
                continue;
            }
            r.m_c[basis.product_index(i, j)] += a.m_c[i] * b.m_c[j];
        }
    }
    r.trim();
    return r;
}

template <class S>
XSeries<S> XSeries<S>::reciprocal() const
{
    if (reliable() < 0 || m_c.empty() || m_c[0] == 0) {
        fail(ErrorKind::singular_division, "reciprocal of a series with zero constant term");
    }
    XSeries r(m_frame);
    const bool exact_constant = m_exact && degree() == 0;
    if (!exact_constant) {
        r.m_exact = false;
        r.m_reliable = reliable();
    }
    const MonomialBasis &basis = this->basis();
    const int top = r.reliable();
    const std::size_t limit = basis.count_up_to(top);
    const S inv0 = S(1) / m_c[0];
    std::vector<S> acc(limit, S(0));
    r.m_c.assign(limit, S(0));
    r.m_c[0] = inv0;
    for (int d = 0; d <= top; ++d) {
        const std::size_t lo = basis.count_up_to(d - 1), hi = basis.count_up_to(d);
        if (d > 0) {
            for (std::size_t k = lo; k < hi; ++k) {
                r.m_c[k] = -acc[k] * inv0;
            }
        }
        // feed the finished degree-d block into the running product a * r
        for (std::size_t j = lo; j < hi; ++j) {
            if (r.m_c[j] == 0) {
                continue;
            }
            const std::size_t imax = std::min(m_c.size(), basis.count_up_to(top - d));
            for (std::size_t i = 1; i < imax; ++i) {
                if (m_c[i] != 0) {
                    acc[basis.product_index(i, j)] += m_c[i] * r.m_c[j];
                }
            }
        }
    }
    r.trim();
    return r;
}

template <class S>
XSeries<S> XSeries<S>::partial(int i) const
{
    if (i < 0 || i >= variables()) {
        fail(ErrorKind::configuration, "partial derivative index out of range");
    }
    XSeries r(m_frame);
    if (!m_exact) {
        r.m_exact = false;
        r.m_reliable = std::max(m_reliable - 1, -1);
    }
    const MonomialBasis &basis = this->basis();
    r.m_c.assign(std::min(m_c.size(), basis.count_up_to(r.reliable())), S(0));
    for (std::size_t k = 1; k < m_c.size(); ++k) {
        const int p = basis.exponent(k)[static_cast<std::size_t>(i)];
        if (p == 0 || m_c[k] == 0) {
            continue;
        }
        const std::size_t low = basis.lower_index(k, i);
        if (low < r.m_c.size()) {
            r.m_c[low] += m_c[k] * S(p);
        }
    }
    r.trim();
    return r;
}

template <class S>
XSeries<S> XSeries<S>::truncated(int d) const
{
    XSeries r(*this);
    if (d >= degree()) {
        return r;
    }
    r.m_exact = false;
    r.m_reliable = std::max(std::min(reliable(), d), -1);
    r.trim();
    return r;
}

template <class S>
XSeries<S> XSeries<S>::as_jet(int reliable_degree) const
{
    XSeries r(*this);
    r.m_reliable = std::clamp(std::min(reliable(), reliable_degree), -1, max_degree());
    r.m_exact = false;
    r.trim();
    return r;
}

template <class S>
XSeries<S> insert_variable(const XSeries<S> &a, int position, FramePtr<S> target)
{
    const int n = a.variables();
    if (target->variables != n + 1 || target->max_degree != a.max_degree() || position < 0 || position > n) {
        fail(ErrorKind::configuration, "insert_variable: incompatible target frame");
    }
    for (int i = 0, j = 0; i <= n; ++i) {
        if (i == position) {
            continue;
        }
        if (target->base_point[static_cast<std::size_t>(i)] != a.frame()->base_point[static_cast<std::size_t>(j++)]) {
            fail(ErrorKind::configuration, "insert_variable: base points disagree");
        }
    }
    const MonomialBasis &from = a.basis();
    const MonomialBasis &to = *target->basis;
    std::vector<S> dense(to.count_up_to(a.degree()), S(0));
    Exponent e(static_cast<std::size_t>(n + 1));
    const auto coeffs = a.dense();
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const auto src = from.exponent(k);
        for (int i = 0, j = 0; i <= n; ++i) {
            e[static_cast<std::size_t>(i)] = i == position ? 0 : src[static_cast<std::size_t>(j++)];
        }
        dense[to.index(e)] = coeffs[k];
    }
    return XSeries<S>::from_dense(std::move(target), std::move(dense), a.reliable(), a.exact());
}

template <class S>
XSeries<S> variable_slice(const XSeries<S> &a, int var, int power, FramePtr<S> target)
{
    const int n = a.variables();
    if (target->variables != n - 1 || var < 0 || var >= n || power < 0) {
        fail(ErrorKind::configuration, "variable_slice: incompatible target frame");
    }
    const MonomialBasis &from = a.basis();
    const MonomialBasis &to = *target->basis;
    std::vector<S> dense(to.size(), S(0));
    Exponent e(static_cast<std::size_t>(n - 1));
    bool overflow = false;
    const auto coeffs = a.dense();
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const auto src = from.exponent(k);
        if (src[static_cast<std::size_t>(var)] != power || coeffs[k] == 0) {
            continue;
        }
        for (int i = 0, j = 0; i < n; ++i) {
            if (i != var) {
                e[static_cast<std::size_t>(j++)] = src[static_cast<std::size_t>(i)];
            }
        }
        const std::size_t idx = to.index(e);
        if (idx == MonomialBasis::npos) {
            overflow = true;
            continue;
        }
        dense[idx] = coeffs[k];
    }
    const bool exact = a.exact() && !overflow;
    const int rel = a.exact() ? target->max_degree : std::min(a.reliable() - power, target->max_degree);
    return XSeries<S>::from_dense(std::move(target), std::move(dense), rel, exact);
}

// ---------------------------------------------------------------------------
// SigmaSeries

template <class S>
SigmaSeries<S>::SigmaSeries(FramePtr<S> frame, int denominator, int order)
    : SigmaSeries(std::move(frame), denominator, order, {})
{
}

template <class S>
SigmaSeries<S>::SigmaSeries(FramePtr<S> frame, int denominator, int order, std::vector<XSeries<S>> coeffs)
    : SigmaSeries(std::move(frame), denominator, order, std::move(coeffs), order)
{
}

template <class S>
SigmaSeries<S>::SigmaSeries(FramePtr<S> frame, int denominator, int order, std::vector<XSeries<S>> coeffs,
                            int reliable_order)
    : m_frame(std::move(frame)), m_den(denominator), m_order(order),
      m_reliable(std::clamp(reliable_order, -1, order)), m_c(std::move(coeffs)), m_zero(m_frame)
{
    if (denominator < 1 || order < 0) {
        fail(ErrorKind::configuration, "sigma series needs denominator >= 1 and order >= 0");
    }
    for (const auto &c : m_c) {
        if (!compatible(c.frame(), m_frame)) {
            fail(ErrorKind::configuration, "sigma coefficient has an incompatible frame");
        }
    }
    if (m_c.size() > static_cast<std::size_t>(m_reliable + 1)) {
        m_c.resize(static_cast<std::size_t>(m_reliable + 1), m_zero);
    }
}

template <class S>
SigmaSeries<S> SigmaSeries<S>::constant(const XSeries<S> &c, int denominator, int order)
{
    return SigmaSeries(c.frame(), denominator, order, {c});
}

template <class S>
SigmaSeries<S> SigmaSeries<S>::monomial(const XSeries<S> &c, int power, int denominator, int order)
{
    if (power < 0) {
        fail(ErrorKind::configuration, "negative sigma power");
    }
    std::vector<XSeries<S>> coeffs;
    if (power <= order) {
        coeffs.assign(static_cast<std::size_t>(power + 1), XSeries<S>(c.frame()));
        coeffs.back() = c;
    }
    return SigmaSeries(c.frame(), denominator, order, std::move(coeffs));
}

template <class S>
void SigmaSeries<S>::require_compatible(const SigmaSeries &other) const
{
    if (m_den != other.m_den) {
        fail(ErrorKind::configuration, "mixing sigma series of different kinds");
    }
    if (!compatible(m_frame, other.m_frame)) {
        fail(ErrorKind::configuration, "sigma series with incompatible coefficient frames");
    }
}

template <class S>
const XSeries<S> &SigmaSeries<S>::operator[](int k) const
{
    if (k < 0 || k >= static_cast<int>(m_c.size())) {
        return m_zero;
    }
    return m_c[static_cast<std::size_t>(k)];
}

template <class S>
int SigmaSeries<S>::valuation() const
{
    for (std::size_t k = 0; k < m_c.size(); ++k) {
        if (!m_c[k].dense().empty()) {
            return static_cast<int>(k);
        }
    }
    return m_reliable >= m_order ? XSeries<S>::unbounded : m_reliable + 1;
}

template <class S>
double SigmaSeries<S>::max_abs() const
{
    double m = 0;
    for (const auto &c : m_c) {
        m = std::max(m, c.max_abs());
    }
    return m;
}

template <class S>
SigmaSeries<S> SigmaSeries<S>::operator-() const
{
    SigmaSeries r(*this);
    for (auto &c : r.m_c) {
        c = -c;
    }
    return r;
}

template <class S>
SigmaSeries<S> &SigmaSeries<S>::operator+=(const SigmaSeries &other)
{
    require_compatible(other);
    m_order = std::min(m_order, other.m_order);
    m_reliable = std::min(m_reliable, other.m_reliable);
    const std::size_t n = static_cast<std::size_t>(m_reliable + 1);
    if (m_c.size() > n) {
        m_c.resize(n, m_zero);
    }
    const std::size_t take = std::min(n, other.m_c.size());
    if (m_c.size() < take) {
        m_c.resize(take, m_zero);
    }
    for (std::size_t k = 0; k < take; ++k) {
        m_c[k] += other.m_c[k];
    }
    return *this;
}

template <class S>
SigmaSeries<S> &SigmaSeries<S>::operator-=(const SigmaSeries &other)
{
    return *this += -other;
}

template <class S>
SigmaSeries<S> &SigmaSeries<S>::operator*=(const S &c)
{
    for (auto &x : m_c) {
        x *= c;
    }
    return *this;
}

template <class S>
SigmaSeries<S> &SigmaSeries<S>::operator*=(const XSeries<S> &c)
{
    for (auto &x : m_c) {
        x = x * c;
    }
    return *this;
}

template <class S>
SigmaSeries<S> SigmaSeries<S>::multiply(const SigmaSeries &a, const SigmaSeries &b)
{
    a.require_compatible(b);
    const int order = std::min(a.m_order, b.m_order);
    const long va = a.valuation(), vb = b.valuation();
    const long rel = std::min<long>({static_cast<long>(order), a.m_reliable + vb, b.m_reliable + va});
    const int top = static_cast<int>(std::max<long>(rel, -1));
    std::vector<XSeries<S>> c;
    const int na = static_cast<int>(a.m_c.size()), nb = static_cast<int>(b.m_c.size());
    const int last = std::min(top, na + nb - 2);
    if (last >= 0) {
        c.assign(static_cast<std::size_t>(last + 1), XSeries<S>(a.m_frame));
    }
    for (int i = 0; i < na; ++i) {
        if (a.m_c[static_cast<std::size_t>(i)].dense().empty() && a.m_c[static_cast<std::size_t>(i)].exact()) {
            continue;
        }
        for (int j = 0; j < nb && i + j <= last; ++j) {
            const auto &y = b.m_c[static_cast<std::size_t>(j)];
            if (y.dense().empty() && y.exact()) {
                continue;
            }
            c[static_cast<std::size_t>(i + j)] += a.m_c[static_cast<std::size_t>(i)] * y;
        }
    }
    return SigmaSeries(a.m_frame, a.m_den, order, std::move(c), top);
}

template <class S>
SigmaSeries<S> SigmaSeries<S>::shifted(int j) const
{
    std::vector<XSeries<S>> c;
    if (j >= 0) {
        c.assign(static_cast<std::size_t>(std::min(j, m_order + 1)), m_zero);
        for (std::size_t k = 0; k < m_c.size() && static_cast<int>(k) + j <= m_order; ++k) {
            c.push_back(m_c[k]);
        }
        return SigmaSeries(m_frame, m_den, m_order, std::move(c), std::min(m_order, m_reliable + j));
    }
    for (std::size_t k = static_cast<std::size_t>(-j); k < m_c.size(); ++k) {
        c.push_back(m_c[k]);
    }
    return SigmaSeries(m_frame, m_den, m_order, std::move(c), m_reliable + j);
}

template <class S>
SigmaSeries<S> SigmaSeries<S>::euler() const
{
    SigmaSeries r(*this);
    for (std::size_t k = 0; k < r.m_c.size(); ++k) {
        r.m_c[k] *= S(static_cast<long>(k));
    }
    return r;
}

template <class S>
SigmaSeries<S> SigmaSeries<S>::derivative() const
{
    std::vector<XSeries<S>> c;
    for (std::size_t k = 1; k < m_c.size(); ++k) {
        c.push_back(m_c[k] * S(static_cast<long>(k)));
    }
    return SigmaSeries(m_frame, m_den, m_order, std::move(c), m_reliable - 1);
}

template <class S>
SigmaSeries<S> SigmaSeries<S>::partial(int i) const
{
    SigmaSeries r(*this);
    for (auto &c : r.m_c) {
        c = c.partial(i);
    }
    return r;
}

template <class S>
SigmaSeries<S> SigmaSeries<S>::truncated(int order) const
{
    return SigmaSeries(m_frame, m_den, order, m_c, std::min(order, m_reliable));
}

template <class S>
SigmaSeries<S> SigmaSeries<S>::in_fractional_variable(int m, int order) const
{
    if (m_den != 1 || m < 1) {
        fail(ErrorKind::configuration, "only T-series can be re-expressed in s = T^(1/m)");
    }
    std::vector<XSeries<S>> c;
    for (std::size_t k = 0; k < m_c.size() && static_cast<int>(k) * m <= order; ++k) {
        c.resize(k * static_cast<std::size_t>(m) + 1, m_zero);
        c.back() = m_c[k];
    }
    const int rel = m * m_reliable + m - 1;
    return SigmaSeries(m_frame, m, order, std::move(c), std::min(order, rel));
}

template <class S>
SigmaSeries<S> SigmaSeries<S>::power(int e) const
{
    if (e < 0) {
        fail(ErrorKind::configuration, "negative power of a sigma series");
    }
    SigmaSeries r = constant(XSeries<S>::constant(m_frame, S(1)), m_den, m_order);
    for (int i = 0; i < e; ++i) {
        r = multiply(r, *this);
    }
    return r;
}

template class XSeries<double>;
template class XSeries<Rational>;
template class SigmaSeries<double>;
template class SigmaSeries<Rational>;

template XSeries<double> insert_variable(const XSeries<double> &, int, FramePtr<double>);
template XSeries<Rational> insert_variable(const XSeries<Rational> &, int, FramePtr<Rational>);
template XSeries<double> variable_slice(const XSeries<double> &, int, int, FramePtr<double>);
template XSeries<Rational> variable_slice(const XSeries<Rational> &, int, int, FramePtr<Rational>);

} // namespace swf
