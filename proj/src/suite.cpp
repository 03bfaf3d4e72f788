#include "lndkit/suite.hpp"

#include "lndkit/constructions.hpp"
#include "lndkit/modification.hpp"

#include <algorithm>
#include <array>

namespace lndkit {

std::vector<Report> family_suite(const SuiteOptions& options)
{
    const unsigned bound = options.run.degree_bound.value_or(3);
    std::vector<unsigned> ms{1, 2, 3, 4};
    for (unsigned m : options.extend_m)
        if (std::find(ms.begin(), ms.end(), m) == ms.end())
            ms.push_back(m);

    const std::vector<FamilyParams> ys{
        {2, 2, 3, "1", {}},
        {2, 2, 3, "1 + alpha*t", {"alpha"}},
        {3, 2, 2, "1", {}},
    };
    const std::vector<std::array<unsigned, 3>> mnr{{2, 1, 1}, {2, 2, 3}, {3, 1, 2}};

    std::vector<std::function<Report()>> tasks;
    for (unsigned m : ms)
        tasks.push_back([m] { return check_Xm(m); });
    for (unsigned m : ms)
        tasks.push_back([m, bound] { return invariant_ring_Xm(m, bound); });
    for (unsigned m : ms)
        tasks.push_back([m] { return phi_trivialization(m); });
    for (unsigned m : {2u, 3u})
        tasks.push_back([m] { return fiber_ring_decomposition(m); });
    for (const auto& t : mnr)
        tasks.push_back([t] { return check_Xmnr(t[0], t[1], t[2]); });
    for (const auto& t : mnr)
        tasks.push_back([t] { return slice_charts(t[0], t[1], t[2]); });
    for (const auto& p : ys)
        tasks.push_back([p] { return check_Y(p); });
    tasks.push_back([p = ys[0]] { return y_charts(p); });
    for (const auto& p : ys)
        tasks.push_back([p] { return verify_modification_is_Y(p); });
    tasks.push_back([] { return cylinder_splitting(2, 2, 3); });
    tasks.push_back([] { return deformed_russell_cubic(); });
    tasks.push_back([] { return punctured_plane_cocycles(kDefaultCoboundaryDegree, kDefaultCoboundaryPole); });
    return run_tasks(tasks, options.run);
}

}  // namespace lndkit
