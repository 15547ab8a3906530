#include "vl/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>

#include "vl/rng.hpp"

namespace vl {

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string format_metric(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

double symbol_match_rate(const std::vector<Assignment>& preds,
                         const std::vector<Assignment>& truths) {
    long hit = 0, total = 0;
    for (size_t i = 0; i < preds.size(); ++i)
        for (size_t p = 0; p < preds[i].size(); ++p) {
            hit += preds[i][p] == truths[i][p];
            ++total;
        }
    return total == 0 ? 0.0 : static_cast<double>(hit) / total;
}

}  // namespace

std::string epoch_stats_csv(const std::vector<EpochStats>& stats) {
    std::string out =
        "epoch,mean_rank_K,mean_verifications,fraction_exhausted,pseudo_label_accuracy,"
        "symbol_accuracy,adjusted_accuracy,wall_time_s\n";
    for (const EpochStats& s : stats) {
        out += std::to_string(s.epoch);
        for (double v : {s.mean_rank_K, s.mean_verifications, s.fraction_exhausted,
                         s.pseudo_label_accuracy, s.symbol_accuracy, s.adjusted_accuracy,
                         s.wall_time_s})
            out += "," + format_metric(v);
        out += "\n";
    }
    return out;
}

long effective_budget(const TaskSpec& task, long requested) {
    if (requested > 0) return requested;
    double space = std::pow(static_cast<double>(task.k()), task.l());
    if (space > static_cast<double>(kDefaultBudgetCap)) return kDefaultBudgetCap;
    return static_cast<long>(space);
}

VerifierFn sample_verifier(const TaskSpec& task, const Sample& sample) {
    return task.kind == TaskKind::Chess ? task.verifier_for(sample.positions) : task.verifier();
}

std::vector<Permutation> task_group(const Dataset& data) {
    const TaskSpec& task = data.task;
    const int k = task.k();
    if (k > kMaxExhaustiveAlphabet) {
        Permutation id(k);
        std::iota(id.begin(), id.end(), 0);
        return {id};
    }
    std::vector<VerifierFn> verifiers;
    if (task.kind == TaskKind::Chess) {
        // invariance must hold across boards; a few distinct ones suffice
        std::set<std::vector<std::pair<int, int>>> boards;
        for (const Sample& s : data.samples) {
            if (boards.insert(s.positions.coords).second)
                verifiers.push_back(task.verifier_for(s.positions));
            if (verifiers.size() >= 5) break;
        }
    } else {
        verifiers.push_back(task.verifier());
    }
    return symmetry_group(verifiers, k, {task.l()});
}

SolveOutcome pseudo_label(const SoftmaxModel& model, const Sample& sample,
                          const VerifierFn& verifier, const TrainConfig& cfg, double anneal) {
    ConfidenceGrid grid = model.forward(sample);
    if (anneal > 0.0) {
        AlignmentConfig acfg;
        acfg.prior = cfg.prior;
        acfg.anneal = anneal;
        acfg.row_renormalize = cfg.row_renormalize;
        grid = align(grid, acfg);
    }
    ScoreModel score = cfg.score_variant == ScoreVariant::IndependentProduct
                           ? ScoreModel::independent_product()
                           : ScoreModel{cfg.score_variant, grid.argmax()};
    if (cfg.dcs_budget < 1)
        throw ContractViolation("pseudo_label needs a resolved dcs_budget (see effective_budget)");
    CopResult cop = solve_cop(grid, score, verifier, cfg.dcs_budget);
    SolveOutcome out;
    out.pseudo_label = std::move(cop.assignment);
    out.rank = cop.rank;
    out.verifications = cop.verifications;
    out.exhausted = cop.exhausted;
    return out;
}

std::vector<EpochStats> train(SoftmaxModel& model, const Dataset& data, const TrainConfig& cfg) {
    const TaskSpec& task = data.task;
    if (data.samples.empty()) throw ContractViolation("training dataset is empty");
    if (cfg.epochs < 1 || cfg.batch_size < 1) throw ContractViolation("bad training config");
    for (const Sample& s : data.samples)
        if (static_cast<int>(s.truth.size()) != task.l())
            throw ContractViolation("verifier/task length does not match the dataset");

    TrainConfig run = cfg;
    if (run.prior.probs.empty()) run.prior = SymbolPrior::uniform(task.k());
    run.prior.validate();
    run.dcs_budget = effective_budget(task, cfg.dcs_budget);
    const int decay = run.anneal_epochs > 0 ? run.anneal_epochs : (run.epochs + 1) / 2;

    const int n = data.size();
    std::vector<VerifierFn> verifiers(n);
    for (int i = 0; i < n; ++i) verifiers[i] = sample_verifier(task, data.samples[i]);

    std::vector<Permutation> group = task_group(data);

    std::vector<EpochStats> history;
    Rng shuffle_rng(mix64(run.seed ^ 0x7261696eULL));
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    for (int epoch = 0; epoch < run.epochs; ++epoch) {
        const double t0 = now_seconds();
        const double anneal = run.align_enabled ? anneal_over(epoch, decay) : 0.0;
        shuffle_rng.shuffle(order);

        EpochStats stats;
        stats.epoch = epoch;
        long pseudo_hits = 0, pseudo_total = 0;

        for (int start = 0; start < n; start += run.batch_size) {
            const int count = std::min(run.batch_size, n - start);
            std::vector<SolveOutcome> outcomes(count);
            parallel_for(count, [&](int b) {
                const int idx = order[start + b];
                outcomes[b] =
                    pseudo_label(model, data.samples[idx], verifiers[idx], run, anneal);
            });

            std::vector<const Sample*> batch(count);
            std::vector<Assignment> labels(count);
            for (int b = 0; b < count; ++b) {
                const int idx = order[start + b];
                batch[b] = &data.samples[idx];
                labels[b] = outcomes[b].pseudo_label;
                stats.mean_verifications += static_cast<double>(outcomes[b].verifications);
                stats.mean_rank_K += static_cast<double>(
                    outcomes[b].exhausted ? outcomes[b].verifications : outcomes[b].rank);
                stats.fraction_exhausted += outcomes[b].exhausted ? 1.0 : 0.0;
                for (size_t p = 0; p < labels[b].size(); ++p) {
                    pseudo_hits += labels[b][p] == data.samples[idx].truth[p];
                    ++pseudo_total;
                }
            }
            grad_step(model, batch, labels, run.lr);
        }

        stats.mean_rank_K /= n;
        stats.mean_verifications /= n;
        stats.fraction_exhausted /= n;
        stats.pseudo_label_accuracy =
            pseudo_total == 0 ? 0.0 : static_cast<double>(pseudo_hits) / pseudo_total;

        std::vector<Assignment> preds(n);
        std::vector<Assignment> truths(n);
        parallel_for(n, [&](int i) {
            preds[i] = model.forward(data.samples[i]).argmax();
            truths[i] = data.samples[i].truth;
        });
        stats.symbol_accuracy = symbol_match_rate(preds, truths);
        stats.adjusted_accuracy = 1.0 - min_perm_empirical_error(preds, truths, group);
        stats.wall_time_s = deterministic_time() ? 0.0 : now_seconds() - t0;
        history.push_back(stats);
    }
    return history;
}

TtcResult predict_ttc(const SoftmaxModel& model, const Sample& sample, const VerifierFn& verifier,
                      ScoreVariant variant, long budget) {
    ConfidenceGrid grid = model.forward(sample);
    Assignment raw = grid.argmax();
    ScoreModel score = variant == ScoreVariant::IndependentProduct
                           ? ScoreModel::independent_product()
                           : ScoreModel{variant, raw};
    CopResult cop = solve_cop(grid, score, verifier, budget);
    if (cop.exhausted) return TtcResult{std::move(raw), false, 0};
    return TtcResult{std::move(cop.assignment), true, cop.rank};
}

EvalMetrics evaluate(const SoftmaxModel& model, const Dataset& data, ScoreVariant variant,
                     long budget, const std::vector<Permutation>& group) {
    const int n = data.size();
    if (n == 0) throw ContractViolation("evaluation dataset is empty");
    const long effective = effective_budget(data.task, budget);

    std::vector<Assignment> raw(n), ttc(n), truths(n);
    std::vector<char> corrected(n, 0);
    std::vector<long> ranks(n, 0);
    parallel_for(n, [&](int i) {
        const Sample& s = data.samples[i];
        raw[i] = model.forward(s).argmax();
        TtcResult r = predict_ttc(model, s, sample_verifier(data.task, s), variant, effective);
        ttc[i] = std::move(r.assignment);
        corrected[i] = r.corrected ? 1 : 0;
        ranks[i] = r.rank;
        truths[i] = s.truth;
    });

    EvalMetrics m;
    m.raw_accuracy = symbol_match_rate(raw, truths);
    m.ttc_accuracy = symbol_match_rate(ttc, truths);
    m.adjusted_accuracy = 1.0 - min_perm_empirical_error(raw, truths, group);
    long ok = 0, rank_sum = 0, rank_n = 0;
    for (int i = 0; i < n; ++i) {
        ok += corrected[i];
        if (corrected[i]) {
            rank_sum += ranks[i];
            ++rank_n;
        }
    }
    m.ttc_verified_fraction = static_cast<double>(ok) / n;
    m.mean_ttc_rank = rank_n == 0 ? 0.0 : static_cast<double>(rank_sum) / rank_n;
    return m;
}

}  // namespace vl
