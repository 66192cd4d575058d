#include "persuasion/wald.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace persuasion {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Uniform [0, 1) for draw `k` of path `path`.
double uniform(std::uint64_t key, std::uint64_t k) {
    return static_cast<double>(splitmix64(key + k * 0x9E3779B97F4A7C15ull) >> 11) * 0x1.0p-53;
}

/// Running mean and sum of squared deviations; merged with Chan's formula.
struct Moments {
    double n = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        n += 1.0;
        const double d = x - mean;
        mean += d / n;
        m2 += d * (x - mean);
    }

    void merge(const Moments& o) {
        if (o.n == 0.0) return;
        const double total = n + o.n;
        const double d = o.mean - mean;
        mean += d * o.n / total;
        m2 += o.m2 + d * d * n * o.n / total;
        n = total;
    }

    double se() const { return n > 1.0 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0; }
};

struct Chunk {
    Moments cost, cost_good, cost_bad, draws, draws_good, draws_bad, posterior;
    std::uint64_t top_good = 0, top_bad = 0, done_good = 0, done_bad = 0, good = 0, bad = 0, cap_hits = 0;

    void merge(const Chunk& o) {
        cost.merge(o.cost);
        cost_good.merge(o.cost_good);
        cost_bad.merge(o.cost_bad);
        draws.merge(o.draws);
        draws_good.merge(o.draws_good);
        draws_bad.merge(o.draws_bad);
        posterior.merge(o.posterior);
        top_good += o.top_good;
        top_bad += o.top_bad;
        done_good += o.done_good;
        done_bad += o.done_bad;
        good += o.good;
        bad += o.bad;
        cap_hits += o.cap_hits;
    }
};

constexpr std::uint64_t kChunk = 65536;

}  // namespace

void validate(const WaldConfig& w) {
    if (!(w.alpha > 0.5 && w.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0.5, 1)");
    if (!(w.c_g >= 0.0 && w.c_b >= 0.0) || !std::isfinite(w.c_g) || !std::isfinite(w.c_b)) {
        throw std::invalid_argument("signal costs must be finite and nonnegative");
    }
    if (!(w.n_low < 0 && w.n_bar > 0)) throw std::invalid_argument("thresholds must satisfy n_low < 0 < n_bar");
    if (!(w.mu0 > 0.0 && w.mu0 < 1.0)) throw std::invalid_argument("mu0 must lie in (0, 1)");
    if (w.n_paths == 0) throw std::invalid_argument("n_paths must be positive");
}

Experiment thresholds_to_experiment(double alpha, int n_bar, int n_low) {
    validate(WaldConfig{.alpha = alpha, .n_bar = n_bar, .n_low = n_low});
    const double x = (1.0 - alpha) / alpha;
    const double d = -n_low;
    const double p = -std::expm1(d * std::log(x)) / -std::expm1((n_bar + d) * std::log(x));
    return Experiment::make(p, std::pow(x, n_bar) * p);
}

std::pair<double, double> posterior_thresholds(double mu0, double alpha, int n_bar, int n_low) {
    validate(WaldConfig{.alpha = alpha, .n_bar = n_bar, .n_low = n_low, .mu0 = mu0});
    const double x = (1.0 - alpha) / alpha;
    const double odds = (1.0 - mu0) / mu0;
    return {1.0 / (1.0 + odds * std::pow(x, n_bar)), 1.0 / (1.0 + odds * std::pow(x, n_low))};
}

LlrCost map_to_llr_constants(double alpha, double c_g, double c_b) {
    if (!(alpha > 0.5 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0.5, 1)");
    const double scale = (2.0 * alpha - 1.0) * std::log(alpha / (1.0 - alpha));
    const double bar_g = alpha * c_g + (1.0 - alpha) * c_b;
    const double bar_b = (1.0 - alpha) * c_g + alpha * c_b;
    return {bar_g / scale, bar_b / scale};
}

std::pair<double, double> conditional_costs(const WaldConfig& w) {
    validate(w);
    const double a = w.alpha;
    const double x = (1.0 - a) / a;
    const double nb = w.n_bar;
    const double nl = w.n_low;
    const double bar_g = a * w.c_g + (1.0 - a) * w.c_b;
    const double bar_b = (1.0 - a) * w.c_g + a * w.c_b;
    const double xl = std::pow(x, nl);
    const double xb = std::pow(x, nb);
    const double xbl = std::pow(x, nb + nl);
    const double den = (2.0 * a - 1.0) * (xl - xb);
    const double good = bar_g * (nb * (xl - 1.0) - nl * (xb - 1.0)) / den;
    const double bad = bar_b * (nb * (xb - xbl) - nl * (xl - xbl)) / den;
    return {good, bad};
}

double closed_form_cost(const WaldConfig& w) {
    const auto [good, bad] = conditional_costs(w);
    return w.mu0 * good + (1.0 - w.mu0) * bad;
}

SimStats simulate(const WaldConfig& w) {
    validate(w);
    const auto [mu_top, mu_bottom] = posterior_thresholds(w.mu0, w.alpha, w.n_bar, w.n_low);
    const std::uint64_t n_chunks = (w.n_paths + kChunk - 1) / kChunk;
    std::vector<Chunk> chunks(n_chunks);

    auto run_chunk = [&](std::uint64_t c) {
        Chunk& out = chunks[c];
        const std::uint64_t end = std::min(w.n_paths, (c + 1) * kChunk);
        for (std::uint64_t i = c * kChunk; i < end; ++i) {
            const std::uint64_t key = splitmix64(w.seed ^ splitmix64(i));
            const bool good_state = uniform(key, 0) < w.mu0;
            const double p_up = good_state ? w.alpha : 1.0 - w.alpha;
            int level = 0;
            std::uint64_t steps = 0;
            double cost = 0.0;
            while (level < w.n_bar && level > w.n_low && steps < w.max_steps) {
                ++steps;
                if (uniform(key, steps) < p_up) {
                    ++level;
                    cost += w.c_g;
                } else {
                    --level;
                    cost += w.c_b;
                }
            }
            const bool capped = level < w.n_bar && level > w.n_low;
            const bool top = level >= w.n_bar;
            out.cost.add(cost);
            out.draws.add(static_cast<double>(steps));
            if (capped) {
                ++out.cap_hits;
            } else {
                out.posterior.add(top ? mu_top : mu_bottom);
            }
            if (good_state) {
                ++out.good;
                out.cost_good.add(cost);
                out.draws_good.add(static_cast<double>(steps));
                if (!capped) {
                    ++out.done_good;
                    out.top_good += top;
                }
            } else {
                ++out.bad;
                out.cost_bad.add(cost);
                out.draws_bad.add(static_cast<double>(steps));
                if (!capped) {
                    ++out.done_bad;
                    out.top_bad += top;
                }
            }
        }
    };

    unsigned threads = w.threads ? w.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_chunks));
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t c = next++; c < n_chunks; c = next++) run_chunk(c);
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    Chunk all;
    for (const auto& c : chunks) all.merge(c);

    SimStats s;
    s.seed = w.seed;
    s.n_paths = w.n_paths;
    s.mean_cost = all.cost.mean;
    s.se_cost = all.cost.se();
    s.p_emp = all.done_good ? static_cast<double>(all.top_good) / static_cast<double>(all.done_good) : 0.0;
    s.q_emp = all.done_bad ? static_cast<double>(all.top_bad) / static_cast<double>(all.done_bad) : 0.0;
    s.mean_draws = all.draws.mean;
    s.paths_good = all.good;
    s.paths_bad = all.bad;
    s.mean_draws_good = all.draws_good.mean;
    s.mean_draws_bad = all.draws_bad.mean;
    s.mean_cost_good = all.cost_good.mean;
    s.se_cost_good = all.cost_good.se();
    s.mean_cost_bad = all.cost_bad.mean;
    s.se_cost_bad = all.cost_bad.se();
    s.mean_posterior = all.posterior.mean;
    s.se_posterior = all.posterior.se();
    s.cap_hits = all.cap_hits;
    return s;
}

}  // namespace persuasion
