// SPDX-License-Identifier: Apache-2.0
#include "circex/fft.hpp"

#include "circex/error.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

namespace circex {

using cd = std::complex<double>;

namespace {

constexpr std::size_t kMaxDirectRadix = 13;

std::vector<std::size_t> small_factors(std::size_t n, bool& has_large)
{
    std::vector<std::size_t> out;
    has_large = false;
    while (n % 4 == 0) {
        out.push_back(4);
        n /= 4;
    }
    for (std::size_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
        while (n % p == 0) {
            out.push_back(p);
            n /= p;
        }
    }
    if (n > 1)
        has_large = true;
    return out;
}

// exp(+2 pi i k / n) for k in [0, n), evaluated in extended precision
std::vector<cd> unit_roots(std::size_t n)
{
    std::vector<cd> w(n);
    const long double step = 2.0L * std::numbers::pi_v<long double> / static_cast<long double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const long double a = step * static_cast<long double>(k);
        w[k] = cd(static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a)));
    }
    return w;
}

std::size_t next_pow2(std::size_t v)
{
    std::size_t m = 1;
    while (m < v)
        m <<= 1;
    return m;
}

} // namespace

struct FftPlan::Impl {
    // mixed-radix state
    std::vector<std::size_t> factors;
    std::vector<cd> roots;

    // Bluestein state
    bool bluestein = false;
    std::unique_ptr<FftPlan> inner;
    std::vector<cd> chirp;      // exp(+i pi (j^2 mod 2n) / n)
    std::vector<cd> kernel_pos; // FFT of conj(chirp), wrapped, for Positive
    std::vector<cd> kernel_neg; // FFT of chirp, wrapped, for Negative

    std::size_t n = 0;

    cd root(std::size_t idx, FftSign sign) const
    {
        const cd& w = roots[idx];
        return sign == FftSign::Positive ? w : std::conj(w);
    }

    void recurse(const cd* in, std::size_t stride, cd* out, std::size_t len, std::size_t fi,
                 FftSign sign, std::vector<cd>& scratch) const;
    void run_bluestein(std::span<const cd> in, std::span<cd> out, FftSign sign) const;
};

void FftPlan::Impl::recurse(const cd* in, std::size_t stride, cd* out, std::size_t len,
                            std::size_t fi, FftSign sign, std::vector<cd>& scratch) const
{
    if (len == 1) {
        out[0] = in[0];
        return;
    }
    const std::size_t p = factors[fi];
    const std::size_t m = len / p;
    for (std::size_t q = 0; q < p; ++q)
        recurse(in + q * stride, stride * p, out + q * m, m, fi + 1, sign, scratch);

    // out[q*m + k] holds the length-m DFT of the q-th decimated subsequence
    const std::size_t tw = n / len;
    const std::size_t pstep = n / p;
    cd* t = scratch.data();
    for (std::size_t k = 0; k < m; ++k) {
        t[0] = out[k];
        for (std::size_t q = 1; q < p; ++q)
            t[q] = out[q * m + k] * root(q * k * tw, sign);

        switch (p) {
        case 2:
            out[k] = t[0] + t[1];
            out[k + m] = t[0] - t[1];
            break;
        case 4: {
            const cd s02 = t[0] + t[2];
            const cd d02 = t[0] - t[2];
            const cd s13 = t[1] + t[3];
            // (t1 - t3) * (sign * i)
            const cd d13 = t[1] - t[3];
            const cd rot = sign == FftSign::Positive ? cd(-d13.imag(), d13.real())
                                                     : cd(d13.imag(), -d13.real());
            out[k] = s02 + s13;
            out[k + m] = d02 + rot;
            out[k + 2 * m] = s02 - s13;
            out[k + 3 * m] = d02 - rot;
            break;
        }
        default:
            for (std::size_t r = 0; r < p; ++r) {
                cd acc = t[0];
                for (std::size_t q = 1; q < p; ++q)
                    acc += t[q] * root(((q * r) % p) * pstep, sign);
                out[r * m + k] = acc;
            }
            break;
        }
    }
}

void FftPlan::Impl::run_bluestein(std::span<const cd> in, std::span<cd> out, FftSign sign) const
{
    const std::size_t m = inner->size();
    std::vector<cd> a(m, cd(0.0, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        const cd c = sign == FftSign::Positive ? chirp[j] : std::conj(chirp[j]);
        a[j] = in[j] * c;
    }
    std::vector<cd> fa(m);
    inner->execute(a, fa, FftSign::Negative);
    const auto& kernel = sign == FftSign::Positive ? kernel_pos : kernel_neg;
    for (std::size_t i = 0; i < m; ++i)
        fa[i] *= kernel[i];
    inner->execute(fa, a, FftSign::Positive);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) {
        const cd c = sign == FftSign::Positive ? chirp[k] : std::conj(chirp[k]);
        out[k] = a[k] * c * scale;
    }
}

FftPlan::FftPlan(std::size_t n) : n_(n), impl_(std::make_unique<Impl>())
{
    if (n == 0)
        throw InvalidArgument("FFT length must be positive");
    impl_->n = n;
    bool has_large = false;
    auto factors = small_factors(n, has_large);
    if (!has_large) {
        impl_->factors = std::move(factors);
        impl_->roots = unit_roots(n);
        return;
    }

    impl_->bluestein = true;
    const std::size_t m = next_pow2(2 * n - 1);
    impl_->inner = std::make_unique<FftPlan>(m);
    impl_->chirp.resize(n);
    const long double step = std::numbers::pi_v<long double> / static_cast<long double>(n);
    const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::uint64_t jj = (static_cast<std::uint64_t>(j) * j) % two_n;
        const long double a = step * static_cast<long double>(jj);
        impl_->chirp[j] = cd(static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a)));
    }
    std::vector<cd> bpos(m, cd(0.0, 0.0));
    std::vector<cd> bneg(m, cd(0.0, 0.0));
    bpos[0] = std::conj(impl_->chirp[0]);
    bneg[0] = impl_->chirp[0];
    for (std::size_t j = 1; j < n; ++j) {
        bpos[j] = bpos[m - j] = std::conj(impl_->chirp[j]);
        bneg[j] = bneg[m - j] = impl_->chirp[j];
    }
    impl_->kernel_pos.resize(m);
    impl_->kernel_neg.resize(m);
    impl_->inner->execute(bpos, impl_->kernel_pos, FftSign::Negative);
    impl_->inner->execute(bneg, impl_->kernel_neg, FftSign::Negative);
}

FftPlan::~FftPlan() = default;
FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

bool FftPlan::uses_bluestein() const noexcept { return impl_->bluestein; }

void FftPlan::execute(std::span<const cd> in, std::span<cd> out, FftSign sign) const
{
    if (in.size() != n_ || out.size() != n_)
        throw InvalidArgument("FFT buffer length mismatch: plan size " + std::to_string(n_));
    if (impl_->bluestein) {
        impl_->run_bluestein(in, out, sign);
        return;
    }
    std::vector<cd> scratch(kMaxDirectRadix);
    impl_->recurse(in.data(), 1, out.data(), n_, 0, sign, scratch);
}

} // namespace circex
