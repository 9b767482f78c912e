#include <swf/nonlinearity.hpp>

#include <map>
#include <string>

namespace swf
{

template <class S>
Nonlinearity<S>::Nonlinearity(FramePtr<S> frame, int top_degree) : m_frame(std::move(frame))
{
    if (top_degree < 0) {
        fail(ErrorKind::configuration, "nonlinearity top degree must be non-negative");
    }
    m_parts.resize(static_cast<std::size_t>(top_degree + 1));
    for (int l = 0; l <= top_degree; ++l) {
        m_parts[static_cast<std::size_t>(l)].degree = l;
    }
}

template <class S>
const Part<S> &Nonlinearity<S>::part(int l) const
{
    if (l < 0 || l >= static_cast<int>(m_parts.size())) {
        return m_empty;
    }
    return m_parts[static_cast<std::size_t>(l)];
}

template <class S>
void Nonlinearity<S>::add(NMonomial<S> mono)
{
    const int l = mono.degree();
    if (l > top_degree()) {
        fail(ErrorKind::input, "monomial of degree " + std::to_string(l) + " exceeds the top degree "
                                   + std::to_string(top_degree()));
    }
    if (mono.xi_powers.size() != static_cast<std::size_t>(variables())) {
        fail(ErrorKind::input, "xi exponent has the wrong length");
    }
    for (const auto &c : mono.coeff) {
        c.require_compatible(XSeries<S>(m_frame));
    }
    auto &part = m_parts[static_cast<std::size_t>(l)];
    for (auto &existing : part.monomials) {
        if (existing.tau_power == mono.tau_power && existing.xi_powers == mono.xi_powers) {
            if (existing.coeff.size() < mono.coeff.size()) {
                existing.coeff.resize(mono.coeff.size(), XSeries<S>(m_frame));
            }
            for (std::size_t p = 0; p < mono.coeff.size(); ++p) {
                existing.coeff[p] += mono.coeff[p];
            }
            return;
        }
    }
    part.monomials.push_back(std::move(mono));
}

template <class S>
int Nonlinearity<S>::t_degree() const
{
    int d = 0;
    for (const auto &part : m_parts) {
        for (const auto &mono : part.monomials) {
            d = std::max(d, static_cast<int>(mono.coeff.size()) - 1);
        }
    }
    return d;
}

template <class S>
Nonlinearity<S> Nonlinearity<S>::time_reversed() const
{
    Nonlinearity r(*this);
    for (auto &part : r.m_parts) {
        for (auto &mono : part.monomials) {
            for (std::size_t p = 0; p < mono.coeff.size(); ++p) {
                if ((static_cast<int>(p) + mono.tau_power) % 2 != 0) {
                    mono.coeff[p] = -mono.coeff[p];
                }
            }
        }
    }
    return r;
}

template <class S>
Nonlinearity<S> Nonlinearity<S>::scaled(const S &c) const
{
    Nonlinearity r(*this);
    for (auto &part : r.m_parts) {
        for (auto &mono : part.monomials) {
            for (auto &x : mono.coeff) {
                x *= c;
            }
        }
    }
    return r;
}

template <class S>
Nonlinearity<S> decompose_homogeneous(const FramePtr<S> &frame, const std::vector<RawMonomial<S>> &raw, int m,
                                      int max_t_degree)
{
    if (m < 1) {
        fail(ErrorKind::configuration, "decompose_homogeneous needs m >= 1");
    }
    Nonlinearity<S> f(frame, m + 1);
    for (const auto &r : raw) {
        if (r.tau_power < 0 || r.xi_powers.size() != static_cast<std::size_t>(frame->variables)) {
            fail(ErrorKind::input, "monomial has a malformed (tau, xi) exponent");
        }
        for (int p : r.xi_powers) {
            if (p < 0) {
                fail(ErrorKind::input, "negative xi exponent");
            }
        }
        const int l = r.tau_power + total_degree(r.xi_powers);
        if (l > m + 1) {
            fail(ErrorKind::input, "monomial of degree " + std::to_string(l) + " in (tau, xi) exceeds m + 1 = "
                                       + std::to_string(m + 1));
        }
        std::map<int, std::vector<std::pair<Exponent, S>>> by_t;
        for (const auto &[p, e, c] : r.coeff) {
            if (p < 0) {
                fail(ErrorKind::input, "negative power of t");
            }
            if (p > max_t_degree) {
                fail(ErrorKind::input, "t-degree " + std::to_string(p) + " exceeds the cap "
                                           + std::to_string(max_t_degree));
            }
            if (e.size() != static_cast<std::size_t>(frame->variables)) {
                fail(ErrorKind::input, "x exponent has the wrong length");
            }
            for (int q : e) {
                if (q < 0) {
                    fail(ErrorKind::input, "negative x exponent");
                }
            }
            by_t[p].emplace_back(e, c);
        }
        NMonomial<S> mono;
        mono.tau_power = r.tau_power;
        mono.xi_powers = r.xi_powers;
        const int top = by_t.empty() ? -1 : by_t.rbegin()->first;
        for (int p = 0; p <= top; ++p) {
            mono.coeff.push_back(XSeries<S>::from_terms(frame, by_t[p]));
        }
        f.add(std::move(mono));
    }
    return f;
}

template <class S>
XSeries<S> coefficient_at(const NMonomial<S> &mono, const XSeries<S> &t)
{
    XSeries<S> c(t.frame());
    for (int p = static_cast<int>(mono.coeff.size()) - 1; p >= 0; --p) {
        c = c * t + mono.coeff[static_cast<std::size_t>(p)];
    }
    return c;
}

template <class S>
SigmaSeries<S> coefficient_at(const NMonomial<S> &mono, const SigmaSeries<S> &t)
{
    SigmaSeries<S> c(t.frame(), t.denominator(), t.order());
    for (int p = static_cast<int>(mono.coeff.size()) - 1; p >= 0; --p) {
        c = c * t + SigmaSeries<S>::constant(mono.coeff[static_cast<std::size_t>(p)], t.denominator(), t.order());
    }
    return c;
}

namespace
{

template <class S>
XSeries<S> xi_factor(const NMonomial<S> &mono, const std::vector<XSeries<S>> &grad, const FramePtr<S> &frame)
{
    XSeries<S> r = XSeries<S>::constant(frame, mono.tau_power % 2 == 0 ? S(1) : S(-1));
    for (std::size_t i = 0; i < mono.xi_powers.size(); ++i) {
        for (int k = 0; k < mono.xi_powers[i]; ++k) {
            r = r * grad[i];
        }
    }
    return r;
}

template <class S>
std::vector<XSeries<S>> gradient(const XSeries<S> &psi)
{
    std::vector<XSeries<S>> g;
    for (int i = 0; i < psi.variables(); ++i) {
        g.push_back(psi.partial(i));
    }
    return g;
}

} // namespace

template <class S>
XSeries<S> eval_part_on_sigma(const Part<S> &part, const XSeries<S> &psi)
{
    const auto grad = gradient(psi);
    XSeries<S> r(psi.frame());
    for (const auto &mono : part.monomials) {
        r += coefficient_at(mono, psi) * xi_factor(mono, grad, psi.frame());
    }
    return r;
}

template <class S>
SplitRemainder<S> split_remainder(const Part<S> &part, const XSeries<S> &psi, int order)
{
    const auto &frame = psi.frame();
    const auto grad = gradient(psi);
    const SigmaSeries<S> t(frame, 1, order + 1, {psi, XSeries<S>::constant(frame, S(1))});
    SigmaSeries<S> total(frame, 1, order + 1);
    for (const auto &mono : part.monomials) {
        total += coefficient_at(mono, t) * xi_factor(mono, grad, frame);
    }
    return {total[0], total.shifted(-1).truncated(order)};
}

template <class S>
BoundPart<S> bind(const Part<S> &part, const SigmaSeries<S> &t)
{
    BoundPart<S> b;
    b.degree = part.degree;
    for (const auto &mono : part.monomials) {
        b.coeffs.push_back(coefficient_at(mono, t));
        std::vector<int> powers{mono.tau_power};
        powers.insert(powers.end(), mono.xi_powers.begin(), mono.xi_powers.end());
        b.powers.push_back(std::move(powers));
    }
    return b;
}

namespace
{

// Lazily filled table of y_v^e.
template <class S>
class PowerTable
{
public:
    explicit PowerTable(const Covector<S> &y) : m_y(y), m_pow(y.size()) {}

    const SigmaSeries<S> &operator()(std::size_t v, int e)
    {
        auto &row = m_pow[v];
        if (row.empty()) {
            const auto &base = m_y[v];
            row.push_back(SigmaSeries<S>::constant(XSeries<S>::constant(base.frame(), S(1)), base.denominator(),
                                                   base.order()));
        }
        while (static_cast<int>(row.size()) <= e) {
            row.push_back(row.back() * m_y[v]);
        }
        return row[static_cast<std::size_t>(e)];
    }

private:
    const Covector<S> &m_y;
    std::vector<std::vector<SigmaSeries<S>>> m_pow;
};

template <class S>
void check_covector(const BoundPart<S> &part, const Covector<S> &y)
{
    if (!part.powers.empty() && y.size() != part.powers.front().size()) {
        fail(ErrorKind::configuration, "covector jet has the wrong number of components");
    }
}

template <class S>
SigmaSeries<S> zero_like(const Covector<S> &y)
{
    return SigmaSeries<S>(y.front().frame(), y.front().denominator(), y.front().order());
}

} // namespace

template <class S>
SigmaSeries<S> eval_on_jet(const BoundPart<S> &part, const Covector<S> &y)
{
    check_covector(part, y);
    SigmaSeries<S> sum = zero_like(y);
    PowerTable<S> pw(y);
    for (std::size_t k = 0; k < part.coeffs.size(); ++k) {
        SigmaSeries<S> term = part.coeffs[k];
        const auto &powers = part.powers[k];
        for (std::size_t v = 0; v < powers.size(); ++v) {
            if (powers[v] > 0) {
                term = term * pw(v, powers[v]);
            }
        }
        sum += term;
    }
    return sum;
}

template <class S>
SigmaSeries<S> eval_on_jet(const Part<S> &part, const SigmaSeries<S> &t, const Covector<S> &y)
{
    return eval_on_jet(bind(part, t), y);
}

template <class S>
SigmaSeries<S> eval_on_jet(const Nonlinearity<S> &f, const SigmaSeries<S> &t, const Covector<S> &y)
{
    SigmaSeries<S> sum(t.frame(), t.denominator(), t.order());
    for (const auto &part : f.parts()) {
        if (!part.empty()) {
            sum += eval_on_jet(part, t, y);
        }
    }
    return sum;
}

template <class S>
SigmaSeries<S> eval_directional(const BoundPart<S> &part, const Covector<S> &y, const Covector<S> &q)
{
    check_covector(part, y);
    SigmaSeries<S> sum = zero_like(y);
    PowerTable<S> pw(y);
    for (std::size_t k = 0; k < part.coeffs.size(); ++k) {
        const auto &powers = part.powers[k];
        for (std::size_t v = 0; v < powers.size(); ++v) {
            if (powers[v] == 0) {
                continue;
            }
            SigmaSeries<S> term = part.coeffs[k] * q[v];
            term *= S(powers[v]);
            for (std::size_t w = 0; w < powers.size(); ++w) {
                const int e = w == v ? powers[w] - 1 : powers[w];
                if (e > 0) {
                    term = term * pw(w, e);
                }
            }
            sum += term;
        }
    }
    return sum;
}

template <class S>
SigmaSeries<S> eval_increment(const BoundPart<S> &part, const Covector<S> &y, const Covector<S> &e)
{
    check_covector(part, y);
    Covector<S> z;
    for (std::size_t v = 0; v < y.size(); ++v) {
        z.push_back(y[v] + e[v]);
    }
    SigmaSeries<S> sum = zero_like(y);
    PowerTable<S> py(y), pz(z);
    for (std::size_t k = 0; k < part.coeffs.size(); ++k) {
        const auto &powers = part.powers[k];
        for (std::size_t v = 0; v < powers.size(); ++v) {
            if (powers[v] == 0) {
                continue;
            }
            // z^k - y^k = e * sum_r z^r y^(k-1-r)
            SigmaSeries<S> diff = zero_like(y);
            for (int r = 0; r < powers[v]; ++r) {
                diff += pz(v, r) * py(v, powers[v] - 1 - r);
            }
            SigmaSeries<S> term = part.coeffs[k] * (e[v] * diff);
            for (std::size_t w = 0; w < powers.size(); ++w) {
                if (w != v && powers[w] > 0) {
                    term = term * (w < v ? pz(w, powers[w]) : py(w, powers[w]));
                }
            }
            sum += term;
        }
    }
    return sum;
}

template class Nonlinearity<double>;
template class Nonlinearity<Rational>;

#define SWF_INSTANTIATE(S)                                                                                             \
    template Nonlinearity<S> decompose_homogeneous(const FramePtr<S> &, const std::vector<RawMonomial<S>> &, int,     \
                                                   int);                                                               \
    template XSeries<S> coefficient_at(const NMonomial<S> &, const XSeries<S> &);                                      \
    template SigmaSeries<S> coefficient_at(const NMonomial<S> &, const SigmaSeries<S> &);                              \
    template XSeries<S> eval_part_on_sigma(const Part<S> &, const XSeries<S> &);                                       \
    template SplitRemainder<S> split_remainder(const Part<S> &, const XSeries<S> &, int);                              \
    template BoundPart<S> bind(const Part<S> &, const SigmaSeries<S> &);                                               \
    template SigmaSeries<S> eval_on_jet(const BoundPart<S> &, const Covector<S> &);                                    \
    template SigmaSeries<S> eval_on_jet(const Part<S> &, const SigmaSeries<S> &, const Covector<S> &);                 \
    template SigmaSeries<S> eval_on_jet(const Nonlinearity<S> &, const SigmaSeries<S> &, const Covector<S> &);         \
    template SigmaSeries<S> eval_directional(const BoundPart<S> &, const Covector<S> &, const Covector<S> &);          \
    template SigmaSeries<S> eval_increment(const BoundPart<S> &, const Covector<S> &, const Covector<S> &);

SWF_INSTANTIATE(double)
SWF_INSTANTIATE(Rational)

#undef SWF_INSTANTIATE

} // namespace swf
