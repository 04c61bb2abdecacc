#include "cep/portfolio.hpp"

#include <algorithm>
#include <exception>

#include "cep/flows.hpp"

namespace cep {

namespace {

/// Run f(i) for each index, fanning out across products under OpenMP.
/// Exceptions are captured per slot and the lowest-index one is rethrown, so
/// failure behavior matches the serial loop.
template <typename Fn>
void for_each_index(std::size_t n, bool parallel, Fn&& f) {
    std::vector<std::exception_ptr> errors(n);
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            try {
                f(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    }
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
}

std::vector<ProductFlows> expand_impl(const std::vector<LinkedProduct>& products,
                                      const Calendar& cal, bool parallel) {
    std::vector<ProductFlows> out(products.size());
    for_each_index(products.size(), parallel, [&](std::size_t i) {
        out[i] = ProductFlows{products[i].strategy_id, generate_flows(products[i], cal)};
    });
    return out;
}

std::vector<CarbonSummary> summarize_impl(const std::vector<ProductFlows>& expanded,
                                          const CivilDate& as_of, const DecayParams& params,
                                          bool parallel) {
    params.validate();
    std::vector<CarbonSummary> out(expanded.size());
    for_each_index(expanded.size(), parallel, [&](std::size_t i) {
        out[i] = summarize(expanded[i].strategy_id, expanded[i].flows.carbon, as_of, params);
    });
    return out;
}

}  // namespace

std::vector<ProductFlows> expand_portfolio_serial(const std::vector<LinkedProduct>& products,
                                                  const Calendar& cal) {
    return expand_impl(products, cal, false);
}

std::vector<ProductFlows> expand_portfolio(const std::vector<LinkedProduct>& products,
                                           const Calendar& cal) {
    return expand_impl(products, cal, true);
}

std::vector<CarbonSummary> summarize_portfolio_serial(const std::vector<ProductFlows>& expanded,
                                                      const CivilDate& as_of,
                                                      const DecayParams& params) {
    return summarize_impl(expanded, as_of, params, false);
}

std::vector<CarbonSummary> summarize_portfolio(const std::vector<ProductFlows>& expanded,
                                               const CivilDate& as_of,
                                               const DecayParams& params) {
    return summarize_impl(expanded, as_of, params, true);
}

std::vector<CarbonFlow> merged_carbon(const std::vector<ProductFlows>& expanded) {
    std::vector<CarbonFlow> all;
    for (const ProductFlows& pf : expanded)
        all.insert(all.end(), pf.flows.carbon.begin(), pf.flows.carbon.end());
    std::stable_sort(all.begin(), all.end(), [](const CarbonFlow& a, const CarbonFlow& b) {
        if (a.date != b.date) return a.date < b.date;
        return a.strategy_id < b.strategy_id;
    });
    return all;
}

}  // namespace cep
