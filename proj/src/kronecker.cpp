#include "ffdyn/kronecker.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <gmp.h>

#include "ffdyn/errors.hpp"

namespace ffdyn {

namespace {

// Pack nonnegative coefficients into a word buffer, `W` 64-bit words per
// digit; buf must be zero-initialized with v.size()*W words.
void pack(const std::vector<Integer>& v, std::size_t W, std::uint64_t* buf) {
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0) continue;
        std::size_t count = 0;
        mpz_export(buf + k * W, &count, -1, sizeof(std::uint64_t), 0, 0, v[k].get_mpz_t());
    }
}

Integer import_words(const std::uint64_t* buf, std::size_t nwords) {
    Integer z;
    mpz_import(z.get_mpz_t(), nwords, -1, sizeof(std::uint64_t), 0, 0, buf);
    return z;
}

// S[k] = sum of v[j] over the window j in [k-other_len+1, k] clipped to v's
// range: the convolution of v with an all-ones vector of length other_len.
std::vector<Integer> window_sums(const std::vector<Integer>& v, std::size_t other_len) {
    std::vector<Integer> prefix(v.size() + 1, Integer(0));
    for (std::size_t j = 0; j < v.size(); ++j) prefix[j + 1] = prefix[j] + v[j];
    std::size_t len_c = v.size() + other_len - 1;
    std::vector<Integer> s(len_c);
    for (std::size_t k = 0; k < len_c; ++k) {
        std::size_t hi = std::min(k, v.size() - 1);
        std::size_t lo = k >= other_len ? k - other_len + 1 : 0;
        s[k] = prefix[hi + 1] - prefix[lo];
    }
    return s;
}

} // namespace

std::vector<Integer> convolve_integer(const std::vector<Integer>& a,
                                      const std::vector<Integer>& b) {
    if (a.empty() || b.empty()) throw ZeroInputError("convolve_integer: empty input");

    // Shift both inputs to be nonnegative so one multiplication suffices;
    // the shift contributions are window sums, recovered in linear time.
    Integer off_a(0), off_b(0);
    for (const auto& x : a) off_a = std::max(off_a, Integer(-x));
    for (const auto& x : b) off_b = std::max(off_b, Integer(-x));

    std::vector<Integer> sa(a.size()), sb(b.size());
    Integer max_a(1), max_b(1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        sa[i] = a[i] + off_a;
        max_a = std::max(max_a, sa[i]);
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        sb[i] = b[i] + off_b;
        max_b = std::max(max_b, sb[i]);
    }

    // Digit bound: max(a') * max(b') * min(len); one spare bit on top.
    std::size_t min_len = std::min(a.size(), b.size());
    std::size_t len_bits = 1;
    while ((std::size_t{1} << len_bits) < min_len) ++len_bits;
    std::size_t beta = mpz_sizeinbase(max_a.get_mpz_t(), 2) +
                       mpz_sizeinbase(max_b.get_mpz_t(), 2) + len_bits + 1;
    std::size_t W = (beta + 63) / 64;

    std::vector<std::uint64_t> buf_a(sa.size() * W, 0), buf_b(sb.size() * W, 0);
    pack(sa, W, buf_a.data());
    pack(sb, W, buf_b.data());
    Integer pa = import_words(buf_a.data(), buf_a.size());
    Integer pb = import_words(buf_b.data(), buf_b.size());
    Integer prod = pa * pb;

    std::size_t len_c = a.size() + b.size() - 1;
    std::vector<std::uint64_t> out((len_c + 1) * W, 0);
    std::size_t count = 0;
    mpz_export(out.data(), &count, -1, sizeof(std::uint64_t), 0, 0, prod.get_mpz_t());

    std::vector<Integer> c(len_c);
    for (std::size_t k = 0; k < len_c; ++k) c[k] = import_words(out.data() + k * W, W);

    // Undo the shifts: a'*b' = a*b + off_a*1*b + off_b*a*1 + off_a*off_b*1*1.
    if (off_b != 0) {
        std::vector<Integer> wa = window_sums(a, b.size());
        for (std::size_t k = 0; k < len_c; ++k) c[k] -= off_b * wa[k];
    }
    if (off_a != 0) {
        std::vector<Integer> wb = window_sums(b, a.size());
        for (std::size_t k = 0; k < len_c; ++k) c[k] -= off_a * wb[k];
    }
    if (off_a != 0 && off_b != 0) {
        Integer oo = off_a * off_b;
        for (std::size_t k = 0; k < len_c; ++k) {
            std::size_t pairs = std::min({k, a.size() - 1, b.size() - 1, len_c - 1 - k}) + 1;
            c[k] -= oo * static_cast<unsigned long>(pairs);
        }
    }
    return c;
}

} // namespace ffdyn
