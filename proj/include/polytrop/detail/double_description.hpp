#pragma once

// Incremental double description (Motzkin) on integer data.
//
// Input : C = { x in Q^n : E x = 0, A x >= 0 }.
// Output: a lineality basis L and extreme rays R with C = span(L) + cone(R).
//
// Rays are kept primitive and adjacency uses the combinatorial test, so no
// rational arithmetic happens inside the loop.

#include <cstddef>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "polytrop/arith.hpp"

namespace polytrop::detail {

struct DDResult {
    IntMatrix lineality;
    IntMatrix rays;
};

inline IntVec combine(const Integer& s, const IntVec& u, const Integer& t, const IntVec& v) {
    IntVec r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) r[i] = s * u[i] - t * v[i];
    return make_primitive(std::move(r));
}

inline DDResult double_description(const IntMatrix& ineq, const IntMatrix& eq, std::size_t n) {
    using Bits = boost::dynamic_bitset<>;
    const std::size_t m = ineq.size();

    IntMatrix lineality;
    if (eq.empty()) {
        for (std::size_t i = 0; i < n; ++i) {
            IntVec e(n, Integer(0));
            e[i] = 1;
            lineality.push_back(std::move(e));
        }
    } else {
        lineality = nullspace(eq, n);
    }

    IntMatrix rays;
    std::vector<Bits> zeros; // zeros[r][k]: inequality k is tight at ray r

    for (std::size_t k = 0; k < m; ++k) {
        const IntVec& a = ineq[k];
        if (is_zero(a)) {
            for (auto& z : zeros) z.set(k);
            continue;
        }

        std::size_t pick = lineality.size();
        Integer a_l0 = 0;
        for (std::size_t i = 0; i < lineality.size(); ++i) {
            a_l0 = dot(a, lineality[i]);
            if (a_l0 != 0) {
                pick = i;
                break;
            }
        }

        if (pick < lineality.size()) {
            IntVec l0 = lineality[pick];
            if (a_l0 < 0) {
                l0 = negate(std::move(l0));
                a_l0 = -a_l0;
            }
            IntMatrix next_lin;
            for (std::size_t i = 0; i < lineality.size(); ++i) {
                if (i == pick) continue;
                next_lin.push_back(combine(a_l0, lineality[i], dot(a, lineality[i]), l0));
            }
            for (std::size_t r = 0; r < rays.size(); ++r) {
                rays[r] = combine(a_l0, rays[r], dot(a, rays[r]), l0);
                zeros[r].set(k);
            }
            Bits z(m);
            for (std::size_t j = 0; j < k; ++j) z.set(j);
            rays.push_back(make_primitive(l0));
            zeros.push_back(std::move(z));
            lineality = std::move(next_lin);
            continue;
        }

        std::vector<Integer> val(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            val[r] = dot(a, rays[r]);
            if (val[r] > 0) pos.push_back(r);
            else if (val[r] < 0) neg.push_back(r);
        }
        if (neg.empty()) {
            for (std::size_t r = 0; r < rays.size(); ++r)
                if (val[r] == 0) zeros[r].set(k);
            continue;
        }

        IntMatrix next_rays;
        std::vector<Bits> next_zeros;
        for (std::size_t p : pos)
            for (std::size_t q : neg) {
                Bits common = zeros[p] & zeros[q];
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == q) continue;
                    if (common.is_subset_of(zeros[r])) adjacent = false;
                }
                if (!adjacent) continue;
                next_rays.push_back(combine(val[p], rays[q], val[q], rays[p]));
                common.set(k);
                next_zeros.push_back(std::move(common));
            }
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (val[r] < 0) continue;
            if (val[r] == 0) zeros[r].set(k);
            next_rays.push_back(std::move(rays[r]));
            next_zeros.push_back(std::move(zeros[r]));
        }
        rays = std::move(next_rays);
        zeros = std::move(next_zeros);
    }
    return {std::move(lineality), std::move(rays)};
}

} // namespace polytrop::detail
