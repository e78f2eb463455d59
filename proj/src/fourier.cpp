#include "polarwalk/fourier.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "polarwalk/errors.hpp"
#include "polarwalk/seeding.hpp"

namespace polarwalk {

namespace {

// In-place butterfly: v[m] <- sum_x (-1)^{popcount(m & x)} v[x]. Applying it
// twice multiplies by 2^n, which is what makes the integer mode exact.
template <typename T>
void hadamard_inplace(std::vector<T>& v) {
    const std::size_t size = v.size();
    for (std::size_t half = 1; half < size; half <<= 1) {
        for (std::size_t block = 0; block < size; block += half << 1) {
            for (std::size_t i = block; i < block + half; ++i) {
                const T a = v[i];
                const T b = v[i + half];
                v[i] = a + b;
                v[i + half] = a - b;
            }
        }
    }
}

}  // namespace

FourierExpansion::FourierExpansion(int n_vars, std::vector<double> c) : n(n_vars), coeffs(std::move(c)) {
    if (coeffs.size() != (std::size_t{1} << n))
        throw std::invalid_argument("coefficient vector length must be 2^n");
}

FourierExpansion FourierExpansion::zeros(int n_vars) {
    return FourierExpansion(n_vars, std::vector<double>(std::size_t{1} << n_vars, 0.0));
}

int Restriction::fixed_count() const {
    int count = 0;
    for (std::int8_t a : assignment) count += a != kFree;
    return count;
}

FourierExpansion wht_forward(const TruthTable& table, const Caps& caps) {
    if (table.n > caps.max_n)
        throw ResourceError("transform on " + std::to_string(table.n) + " variables exceeds cap " +
                            std::to_string(caps.max_n));
    std::vector<double> coeffs(table.values.begin(), table.values.end());
    hadamard_inplace(coeffs);
    const double scale = 1.0 / static_cast<double>(std::size_t{1} << table.n);
    for (double& c : coeffs) c *= scale;
    return FourierExpansion(table.n, std::move(coeffs));
}

std::vector<std::int64_t> wht_forward_scaled(const TruthTable& table, const Caps& caps) {
    if (table.n > caps.max_n)
        throw ResourceError("transform on " + std::to_string(table.n) + " variables exceeds cap " +
                            std::to_string(caps.max_n));
    std::vector<std::int64_t> coeffs(table.values.begin(), table.values.end());
    hadamard_inplace(coeffs);
    return coeffs;
}

TruthTable wht_inverse_scaled(int n, const std::vector<std::int64_t>& scaled_coeffs) {
    std::vector<std::int64_t> work = scaled_coeffs;
    hadamard_inplace(work);
    const std::int64_t scale = std::int64_t{1} << n;
    std::vector<std::int8_t> vals(work.size());
    for (std::size_t m = 0; m < work.size(); ++m) {
        if (work[m] % scale != 0) throw std::invalid_argument("not a scaled sign-function transform");
        const std::int64_t v = work[m] / scale;
        if (v != 1 && v != -1) throw std::invalid_argument("inverse transform is not a sign function");
        vals[m] = static_cast<std::int8_t>(v);
    }
    return TruthTable(n, std::move(vals));
}

std::vector<double> corner_values(const FourierExpansion& fe) {
    std::vector<double> values = fe.coeffs;
    hadamard_inplace(values);
    return values;
}

double eval_multilinear(const FourierExpansion& fe, std::span<const double> x) {
    if (static_cast<int>(x.size()) != fe.n)
        throw std::invalid_argument("point dimension does not match expansion");
    std::vector<double> work = fe.coeffs;
    std::size_t size = work.size();
    for (int i = fe.n - 1; i >= 0; --i) {
        const std::size_t half = size >> 1;
        for (std::size_t m = 0; m < half; ++m) work[m] += x[static_cast<std::size_t>(i)] * work[m + half];
        size = half;
    }
    return work.empty() ? 0.0 : work[0];
}

FourierExpansion apply_restriction(const FourierExpansion& fe, const Restriction& rho) {
    if (static_cast<int>(rho.assignment.size()) != fe.n)
        throw std::invalid_argument("restriction dimension does not match expansion");
    std::uint32_t fixed_mask = 0;
    std::uint32_t minus_mask = 0;
    for (int i = 0; i < fe.n; ++i) {
        if (rho.assignment[static_cast<std::size_t>(i)] == Restriction::kFree) continue;
        fixed_mask |= 1u << i;
        if (rho.assignment[static_cast<std::size_t>(i)] == -1) minus_mask |= 1u << i;
    }
    FourierExpansion out = FourierExpansion::zeros(fe.n);
    for (std::uint32_t m = 0; m < fe.size(); ++m) {
        const double c = fe.coeffs[m];
        if (c == 0.0) continue;
        const int sign = (std::popcount(m & minus_mask) & 1) ? -1 : 1;
        out.coeffs[m & ~fixed_mask] += sign * c;
    }
    return out;
}

FourierExpansion negate_inputs(const FourierExpansion& fe, std::span<const int> signs) {
    if (static_cast<int>(signs.size()) != fe.n)
        throw std::invalid_argument("sign vector dimension does not match expansion");
    std::uint32_t minus_mask = 0;
    for (int i = 0; i < fe.n; ++i) {
        if (signs[static_cast<std::size_t>(i)] == -1) minus_mask |= 1u << i;
        else if (signs[static_cast<std::size_t>(i)] != 1)
            throw std::invalid_argument("sign vector entries must be +1 or -1");
    }
    FourierExpansion out = fe;
    for (std::uint32_t m = 0; m < out.size(); ++m)
        if (std::popcount(m & minus_mask) & 1) out.coeffs[m] = -out.coeffs[m];
    return out;
}

FourierExpansion affine_substitute(const FourierExpansion& fe, std::span<const double> offset,
                                   std::span<const double> scale) {
    if (static_cast<int>(offset.size()) != fe.n || static_cast<int>(scale.size()) != fe.n)
        throw std::invalid_argument("substitution dimension does not match expansion");
    FourierExpansion out = fe;
    for (int i = 0; i < fe.n; ++i) {
        const double a = offset[static_cast<std::size_t>(i)];
        const double b = scale[static_cast<std::size_t>(i)];
        const std::uint32_t bit = 1u << i;
        for (std::uint32_t m = 0; m < out.size(); ++m) {
            if ((m & bit) == 0) continue;
            out.coeffs[m ^ bit] += a * out.coeffs[m];
            out.coeffs[m] *= b;
        }
    }
    return out;
}

std::uint64_t restriction_count(int n) {
    std::uint64_t count = 1;
    for (int i = 0; i < n; ++i) count *= 3;
    return count;
}

Restriction decode_restriction(int n, std::uint64_t index) {
    Restriction rho = Restriction::all_free(n);
    for (int i = 0; i < n; ++i) {
        const int digit = static_cast<int>(index % 3);
        index /= 3;
        rho.assignment[static_cast<std::size_t>(i)] =
            digit == 0 ? Restriction::kFree : static_cast<std::int8_t>(digit == 1 ? +1 : -1);
    }
    return rho;
}

std::uint64_t for_each_restriction(const FourierExpansion& fe, std::int64_t budget,
                                   std::optional<std::uint64_t> sample_seed,
                                   const std::function<void(const Restriction&, const FourierExpansion&)>& fn) {
    if (budget <= 0) throw std::invalid_argument("restriction budget must be positive");
    const std::uint64_t total = restriction_count(fe.n);
    if (!sample_seed.has_value()) {
        if (total > static_cast<std::uint64_t>(budget))
            throw ResourceError("closure of size 3^" + std::to_string(fe.n) +
                                " exceeds budget; pass a sampling seed");
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            const Restriction rho = decode_restriction(fe.n, idx);
            fn(rho, apply_restriction(fe, rho));
        }
        return total;
    }
    for (std::int64_t draw = 0; draw < budget; ++draw) {
        const std::uint64_t idx = derive_seed(*sample_seed, static_cast<std::uint64_t>(draw)) % total;
        const Restriction rho = decode_restriction(fe.n, idx);
        fn(rho, apply_restriction(fe, rho));
    }
    return static_cast<std::uint64_t>(budget);
}

std::vector<FourierExpansion> restriction_closure(const FourierExpansion& fe, std::int64_t budget,
                                                  std::optional<std::uint64_t> sample_seed) {
    std::vector<FourierExpansion> out;
    for_each_restriction(fe, budget, sample_seed,
                         [&out](const Restriction&, const FourierExpansion& restricted) {
                             out.push_back(restricted);
                         });
    return out;
}

}  // namespace polarwalk
