#include "opss/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "opss/parallel.hpp"
#include "opss/propagation.hpp"
#include "opss/rng.hpp"

namespace opss {

double sequence_cost(std::span<const double> fidelities, const CostWeights& w) {
    if (fidelities.empty()) throw std::invalid_argument("cost needs at least one fidelity");
    const double m = static_cast<double>(fidelities.size());
    double barrier = 0.0;
    double floor = 0.0;
    double mean = 0.0;
    for (const double f : fidelities) {
        barrier += std::log(std::max(1.0 - f, 1e-12));
        const double deficit = std::max(0.0, w.f_target - f);
        floor += deficit * deficit;
        mean += f;
    }
    mean /= m;
    double var = 0.0;
    for (const double f : fidelities) var += (f - mean) * (f - mean);
    const double robust = std::sqrt(var / m);
    return w.w_b * barrier + w.w_f * floor + w.w_r * robust;
}

Eigen::VectorXd SampleSpec::samples() const {
    validate();
    return Eigen::VectorXd::LinSpaced(m, eps_min, eps_max);
}

void SampleSpec::validate() const {
    if (m < 2) throw std::invalid_argument("sample spec needs m >= 2");
    if (!(eps_min < eps_max)) throw std::invalid_argument("sample spec needs eps_min < eps_max");
}

void DeConfig::validate() const {
    if (population < 4) throw std::invalid_argument("DE population must be >= 4");
    if (max_iterations < 0) throw std::invalid_argument("DE max_iterations must be >= 0");
    if (!(mutation_factor > 0.0)) throw std::invalid_argument("mutation_factor must be > 0");
    if (!(crossover_rate > 0.0 && crossover_rate <= 1.0)) {
        throw std::invalid_argument("crossover_rate must be in (0, 1]");
    }
    if (elite_pool_size < 1) throw std::invalid_argument("elite_pool_size must be >= 1");
}

void RefineConfig::validate() const {
    if (max_iterations < 1) throw std::invalid_argument("refine max_iterations must be >= 1");
    if (!(gradient_step > 0.0)) throw std::invalid_argument("gradient_step must be > 0");
}

void Bounds::validate() const {
    if (lo.size() != hi.size() || lo.empty()) throw std::invalid_argument("malformed bounds");
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!(lo[i] < hi[i])) throw std::invalid_argument("bounds need lo < hi per parameter");
    }
}

double Bounds::clamp(double x, std::size_t i) const { return std::clamp(x, lo[i], hi[i]); }

Bounds Bounds::opss_default(const TwoLevelMap& map, int n_segments) {
    if (n_segments < 1) throw std::invalid_argument("n_segments must be >= 1");
    const double omega = map.coupling();
    Bounds b;
    b.lo.assign(static_cast<std::size_t>(n_segments) + 1, -50.0 * omega);
    b.hi.assign(static_cast<std::size_t>(n_segments) + 1, 50.0 * omega);
    b.lo.back() = 0.5 * std::numbers::pi / omega;
    b.hi.back() = 12.0 * std::numbers::pi / omega;
    return b;
}

double OpssObjective::operator()(std::span<const double> x) const {
    return make_candidate(x).cost;
}

Candidate OpssObjective::make_candidate(std::span<const double> x) const {
    if (x.size() < 2) throw std::invalid_argument("parameter vector needs N deltas plus T");
    const std::size_t n = x.size() - 1;
    OpssSequence seq = OpssSequence::detuning(std::vector<double>(x.begin(), x.begin() + n),
                                              x.back());
    return evaluate_candidate(model, map, seq, sample, axis, weights);
}

Candidate evaluate_candidate(const Model& model, const TwoLevelMap& map, const OpssSequence& seq,
                             const SampleSpec& sample, ErrorAxis axis,
                             const CostWeights& weights) {
    const Eigen::VectorXd eps = sample.samples();
    std::vector<double> fidelities(static_cast<std::size_t>(eps.size()));
    for (Eigen::Index i = 0; i < eps.size(); ++i) {
        fidelities[static_cast<std::size_t>(i)] =
            evolve_effective(model, map, seq, on_axis(axis, eps[i])).fidelity;
    }
    Candidate candidate{seq, sequence_cost(fidelities, weights), std::move(fidelities)};
    return candidate;
}

namespace {

// Deterministic elite pool: best-by-cost, exact-duplicate vectors collapsed.
void update_elite(std::vector<ScoredVector>& elite, const ScoredVector& entry, int capacity) {
    for (const auto& kept : elite) {
        if (kept.x == entry.x) return;
    }
    elite.push_back(entry);
    std::stable_sort(elite.begin(), elite.end(),
                     [](const ScoredVector& a, const ScoredVector& b) { return a.cost < b.cost; });
    if (elite.size() > static_cast<std::size_t>(capacity)) elite.resize(capacity);
}

} // namespace

DeResult de_optimize(const ObjectiveFn& objective, const Bounds& bounds, const DeConfig& config) {
    bounds.validate();
    config.validate();
    const std::size_t dim = bounds.size();
    const int np = config.population;

    std::vector<std::vector<double>> population(static_cast<std::size_t>(np));
    std::vector<double> costs(static_cast<std::size_t>(np));

    for (int i = 0; i < np; ++i) {
        Rng rng = Rng::stream(config.seed, 0, static_cast<std::uint64_t>(i));
        auto& x = population[static_cast<std::size_t>(i)];
        x.resize(dim);
        for (std::size_t d = 0; d < dim; ++d) x[d] = rng.uniform(bounds.lo[d], bounds.hi[d]);
    }
    parallel_for(static_cast<std::size_t>(np), [&](std::size_t i) {
        costs[i] = objective(population[i]);
    });

    DeResult result;
    result.evaluations = static_cast<std::size_t>(np);
    for (int i = 0; i < np; ++i) {
        update_elite(result.elite, {population[static_cast<std::size_t>(i)], costs[static_cast<std::size_t>(i)]},
                     config.elite_pool_size);
    }

    std::vector<std::vector<double>> trials(static_cast<std::size_t>(np),
                                            std::vector<double>(dim));
    std::vector<double> trial_costs(static_cast<std::size_t>(np));

    for (int gen = 1; gen <= config.max_iterations; ++gen) {
        // Mutation/crossover decisions are drawn sequentially per candidate
        // stream; only the cost evaluations fan out to worker threads.
        for (int i = 0; i < np; ++i) {
            Rng rng = Rng::stream(config.seed, static_cast<std::uint64_t>(gen),
                                  static_cast<std::uint64_t>(i));
            int r1 = rng.uniform_int(np - 1);
            if (r1 >= i) ++r1;
            int r2 = rng.uniform_int(np - 1);
            if (r2 >= i) ++r2;
            while (r2 == r1) {
                r2 = rng.uniform_int(np - 1);
                if (r2 >= i) ++r2;
            }
            int r3 = rng.uniform_int(np - 1);
            if (r3 >= i) ++r3;
            while (r3 == r1 || r3 == r2) {
                r3 = rng.uniform_int(np - 1);
                if (r3 >= i) ++r3;
            }

            const auto& base = population[static_cast<std::size_t>(r1)];
            const auto& pa = population[static_cast<std::size_t>(r2)];
            const auto& pb = population[static_cast<std::size_t>(r3)];
            auto& trial = trials[static_cast<std::size_t>(i)];
            trial = population[static_cast<std::size_t>(i)];
            const std::size_t forced = static_cast<std::size_t>(rng.uniform_int(static_cast<int>(dim)));
            for (std::size_t d = 0; d < dim; ++d) {
                if (d == forced || rng.uniform() < config.crossover_rate) {
                    trial[d] = bounds.clamp(
                        base[d] + config.mutation_factor * (pa[d] - pb[d]), d);
                }
            }
        }

        parallel_for(static_cast<std::size_t>(np), [&](std::size_t i) {
            trial_costs[i] = objective(trials[i]);
        });
        result.evaluations += static_cast<std::size_t>(np);

        for (int i = 0; i < np; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            if (trial_costs[idx] < costs[idx]) {
                population[idx] = trials[idx];
                costs[idx] = trial_costs[idx];
                update_elite(result.elite, {population[idx], costs[idx]}, config.elite_pool_size);
            }
        }
        result.generations = gen;
    }
    return result;
}

namespace {

Eigen::VectorXd fd_gradient(const ObjectiveFn& objective, const std::vector<double>& x,
                            const Bounds& bounds, double rel_step, std::size_t& evals) {
    const std::size_t dim = x.size();
    Eigen::VectorXd grad(static_cast<Eigen::Index>(dim));
    std::vector<double> xp = x;
    std::vector<double> xm = x;
    for (std::size_t d = 0; d < dim; ++d) {
        const double h = rel_step * (bounds.hi[d] - bounds.lo[d]);
        xp[d] = x[d] + h;
        xm[d] = x[d] - h;
        grad[static_cast<Eigen::Index>(d)] = (objective(xp) - objective(xm)) / (2.0 * h);
        xp[d] = x[d];
        xm[d] = x[d];
        evals += 2;
    }
    return grad;
}

} // namespace

RefineResult refine(const ObjectiveFn& objective, std::span<const double> start,
                    const Bounds& bounds, const RefineConfig& config) {
    bounds.validate();
    config.validate();
    const std::size_t dim = bounds.size();
    if (start.size() != dim) throw std::invalid_argument("start point dimension mismatch");

    std::vector<double> x(start.begin(), start.end());
    for (std::size_t d = 0; d < dim; ++d) x[d] = bounds.clamp(x[d], d);

    double fx = objective(x);
    RefineResult best{x, fx, 0};
    std::size_t evals = 1;

    const int memory = 10;
    std::vector<Eigen::VectorXd> s_hist, y_hist;
    std::vector<double> rho_hist;

    Eigen::VectorXd grad = fd_gradient(objective, x, bounds, config.gradient_step, evals);
    Eigen::VectorXd x_vec = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(dim));

    auto projected_gradient_norm = [&](const std::vector<double>& point,
                                       const Eigen::VectorXd& g) {
        double norm2 = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            double gd = g[static_cast<Eigen::Index>(d)];
            const double width = bounds.hi[d] - bounds.lo[d];
            if (point[d] <= bounds.lo[d] + 1e-14 * width && gd > 0.0) gd = 0.0;
            if (point[d] >= bounds.hi[d] - 1e-14 * width && gd < 0.0) gd = 0.0;
            norm2 += gd * gd;
        }
        return std::sqrt(norm2);
    };

    for (int iter = 1; iter <= config.max_iterations; ++iter) {
        best.iterations = iter;
        if (projected_gradient_norm(x, grad) < 1e-12 * std::max(1.0, std::abs(fx))) break;

        // Two-loop L-BFGS direction from the stored curvature pairs.
        Eigen::VectorXd q = grad;
        std::vector<double> alpha(s_hist.size());
        for (std::size_t h = s_hist.size(); h-- > 0;) {
            alpha[h] = rho_hist[h] * s_hist[h].dot(q);
            q -= alpha[h] * y_hist[h];
        }
        if (!s_hist.empty()) {
            const auto& s = s_hist.back();
            const auto& y = y_hist.back();
            q *= s.dot(y) / y.dot(y);
        }
        for (std::size_t h = 0; h < s_hist.size(); ++h) {
            const double beta = rho_hist[h] * y_hist[h].dot(q);
            q += (alpha[h] - beta) * s_hist[h];
        }
        Eigen::VectorXd direction = -q;
        if (direction.dot(grad) >= 0.0) direction = -grad;  // safeguard descent

        // Backtracking Armijo search on the box-projected path.
        double step = 1.0;
        bool accepted = false;
        std::vector<double> x_new(dim);
        double f_new = fx;
        for (int ls = 0; ls < 50; ++ls) {
            for (std::size_t d = 0; d < dim; ++d) {
                x_new[d] = bounds.clamp(x[d] + step * direction[static_cast<Eigen::Index>(d)], d);
            }
            if (x_new == x) break;
            f_new = objective(x_new);
            ++evals;
            double directional = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                directional += grad[static_cast<Eigen::Index>(d)] * (x_new[d] - x[d]);
            }
            if (f_new <= fx + 1e-4 * directional || (directional >= 0.0 && f_new < fx)) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // line-search failure: keep the best iterate found

        Eigen::VectorXd x_new_vec =
            Eigen::Map<const Eigen::VectorXd>(x_new.data(), static_cast<Eigen::Index>(dim));
        Eigen::VectorXd grad_new = fd_gradient(objective, x_new, bounds, config.gradient_step, evals);

        const Eigen::VectorXd s = x_new_vec - x_vec;
        const Eigen::VectorXd y = grad_new - grad;
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            s_hist.push_back(s);
            y_hist.push_back(y);
            rho_hist.push_back(1.0 / sy);
            if (s_hist.size() > static_cast<std::size_t>(memory)) {
                s_hist.erase(s_hist.begin());
                y_hist.erase(y_hist.begin());
                rho_hist.erase(rho_hist.begin());
            }
        }

        x = x_new;
        x_vec = x_new_vec;
        fx = f_new;
        grad = grad_new;
        if (fx < best.cost) {
            best.cost = fx;
            best.x = x;
        }
    }
    return best;
}

HybridResult hybrid_optimize(const OpssObjective& objective, int n_segments,
                             const DeConfig& de_config, const RefineConfig& refine_config,
                             const Bounds* bounds_override,
                             const std::function<void(const nlohmann::json&)>& stage_sink) {
    const auto t_start = std::chrono::steady_clock::now();
    const Bounds bounds = bounds_override ? *bounds_override
                                          : Bounds::opss_default(objective.map, n_segments);
    if (bounds.size() != static_cast<std::size_t>(n_segments) + 1) {
        throw std::invalid_argument("bounds dimension must be n_segments + 1");
    }

    ObjectiveFn fn = [&objective](std::span<const double> x) { return objective(x); };

    const DeResult de = de_optimize(fn, bounds, de_config);
    const auto t_de = std::chrono::steady_clock::now();

    nlohmann::json de_stage;
    de_stage["stage"] = "de";
    de_stage["elite_costs"] = nlohmann::json::array();
    for (const auto& e : de.elite) de_stage["elite_costs"].push_back(e.cost);
    de_stage["evaluations"] = de.evaluations;
    if (stage_sink) stage_sink(de_stage);

    // Refine every elite member; refinement problems are independent.
    std::vector<RefineResult> refined(de.elite.size());
    parallel_for(de.elite.size(), [&](std::size_t i) {
        refined[i] = refine(fn, de.elite[i].x, bounds, refine_config);
    });
    const auto t_refine = std::chrono::steady_clock::now();

    std::size_t best_idx = 0;
    for (std::size_t i = 1; i < refined.size(); ++i) {
        if (refined[i].cost < refined[best_idx].cost) best_idx = i;
    }

    HybridResult result;
    result.best = objective.make_candidate(refined[best_idx].x);
    result.physical = to_physical(result.best.sequence, objective.map);

    auto& manifest = result.manifest;
    manifest["model"] = objective.model.tag();
    manifest["n_segments"] = n_segments;
    manifest["seed"] = de_config.seed;
    manifest["de"] = {{"population", de_config.population},
                      {"max_iterations", de_config.max_iterations},
                      {"mutation_factor", de_config.mutation_factor},
                      {"crossover_rate", de_config.crossover_rate},
                      {"elite_pool_size", de_config.elite_pool_size},
                      {"evaluations", de.evaluations}};
    manifest["refine"] = {{"max_iterations", refine_config.max_iterations},
                          {"gradient_step", refine_config.gradient_step}};
    manifest["weights"] = {{"w_b", objective.weights.w_b},
                           {"w_f", objective.weights.w_f},
                           {"w_r", objective.weights.w_r},
                           {"f_target", objective.weights.f_target}};
    manifest["sample_spec"] = {{"m", objective.sample.m},
                               {"eps_min", objective.sample.eps_min},
                               {"eps_max", objective.sample.eps_max},
                               {"axis", to_string(objective.axis)}};
    manifest["bounds"] = {{"lo", bounds.lo}, {"hi", bounds.hi}};
    manifest["calibrated_map"] = objective.map.is_calibrated();
    manifest["resonant_control"] = objective.map.resonant_control();
    manifest["rabi_frequency"] = objective.map.rabi_frequency();
    manifest["elite_costs_refined"] = nlohmann::json::array();
    for (const auto& r : refined) manifest["elite_costs_refined"].push_back(r.cost);
    manifest["best_cost"] = result.best.cost;
    using seconds = std::chrono::duration<double>;
    manifest["timings_s"] = {{"de", seconds(t_de - t_start).count()},
                             {"refine", seconds(t_refine - t_de).count()},
                             {"total", seconds(std::chrono::steady_clock::now() - t_start).count()}};
    if (stage_sink) {
        nlohmann::json refine_stage;
        refine_stage["stage"] = "refine";
        refine_stage["best_cost"] = result.best.cost;
        stage_sink(refine_stage);
    }
    return result;
}

} // namespace opss
