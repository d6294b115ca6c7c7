"""Monte Carlo experiment harness.

Builds the complete-graph network of simulated IDS nodes, bootstraps
directional trust from test messages, runs consultation rounds under the
three aggregation schemes, sweeps each figure's x-axis parameter, and
renders rows ready for CSV output.

Randomness is organized as named substreams of the configured seed
(experiment code, stream tag, sweep point, replication, node), so every
(node, replication) pair is independent and any figure can be reproduced in
isolation.  The cost sweep reuses one scenario stream across its points so
cost curves differ only through decisions.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .aggregate import simple_average, trust_weight, weighted_average
from .config import ExperimentConfig
from .decision import CostMatrix, Hypothesis
from .peers import (
    PeerModel,
    Scenario,
    feedback_tail_rates,
    sample_feedback,
    shape_params,
)
from .sprt import (
    SequentialCosts,
    SymmetricPeerPopulation,
    acquaintance_bound,
    run_sprt,
    simulate_stopping,
    thresholds_from_targets,
)
from .trust import BetaTrust, accumulate_arrays, expected_rates
from ._kernels import consult_paths

__all__ = [
    "EXPERIMENT_IDS",
    "Network",
    "ResultRow",
    "build_network",
    "bootstrap_trust",
    "run_consultation",
    "run_experiment",
    "emit_csv",
    "population_for",
]

EXPERIMENT_IDS = ("fig2", "fig3", "fig4", "fig5", "fig6", "fig7")

_EXP_CODE = {name: int(name[3]) for name in EXPERIMENT_IDS}
_STREAM_BOOT = 0
_STREAM_SCENARIO = 1
_STREAM_WALK = 2

_SCHEMES = ("sprt", "simple", "weighted")


def _stream(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=key))


@dataclass(frozen=True)
class Network:
    """Peer models plus each observer's trust table, keyed (observer, subject)."""

    config: ExperimentConfig
    models: tuple[PeerModel, ...]
    trust: dict[tuple[int, int], BetaTrust]

    def acquaintances(self, node_id: int) -> tuple[int, ...]:
        return tuple(j for j in range(len(self.models)) if j != node_id)


def build_network(config: ExperimentConfig) -> Network:
    """Complete graph over n_nodes with empty trust tables."""
    models = tuple(
        PeerModel(node_id=i, expertise=config.expertise[i], threshold=config.tau_p[i])
        for i in range(config.n_nodes)
    )
    trust = {
        (i, j): BetaTrust(lambda_f=config.lambda_f, lambda_d=config.lambda_d)
        for i in range(config.n_nodes)
        for j in range(config.n_nodes)
        if i != j
    }
    return Network(config=config, models=models, trust=trust)


def _bootstrap_schedule(messages: int) -> tuple[np.ndarray, np.ndarray, float]:
    """Timestamps of the alternating test messages and the epoch 'now'.

    The 2*messages test messages per acquaintance are spread evenly over one
    time unit ending at the consultation epoch; clean and intrusion
    scenarios alternate, so both classes share the same age profile.
    """
    total = 2 * messages
    ts = (np.arange(total, dtype=np.float64) + 1.0) / total
    return ts[0::2], ts[1::2], 1.0


def bootstrap_trust(
    network: Network, *, rep: int = 0, experiment: int = 0, point: int = 0
) -> Network:
    """Fill every observer's trust table from per-class test messages.

    Each observer consumes its own named substream, so trust tables for
    different (node, replication) pairs are independent.  Zero configured
    messages leaves every table empty (peers then look uninformative).
    """
    config = network.config
    m = config.trust_bootstrap_messages
    n = config.n_nodes
    trust: dict[tuple[int, int], BetaTrust] = {}
    if m == 0:
        return replace(network, trust=dict(network.trust))
    ts_clean, ts_intr, now = _bootstrap_schedule(m)
    timestamps = np.concatenate([ts_clean, ts_intr])
    intrusion_flags = np.concatenate(
        [np.zeros(m, dtype=bool), np.ones(m, dtype=bool)]
    )
    rates = [
        feedback_tail_rates(mod.expertise, config.difficulty, mod.threshold)
        for mod in network.models
    ]
    for i in range(n):
        rng = _stream(config.seed, experiment, _STREAM_BOOT, point, rep, i)
        others = network.acquaintances(i)
        draws = rng.random((len(others), 2, m))
        for jj, j in enumerate(others):
            p_f, p_d = rates[j]
            bits_clean = (draws[jj, 0] < p_f).astype(np.int64)
            bits_intr = (draws[jj, 1] < p_d).astype(np.int64)
            trust[(i, j)] = accumulate_arrays(
                timestamps,
                intrusion_flags,
                np.concatenate([bits_clean, bits_intr]),
                config.lambda_f,
                config.lambda_d,
                now,
            )
    return replace(network, trust=trust)


def _believed_arrays(
    network: Network,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-(observer, subject) believed log-ratio terms and trust weights."""
    n = network.config.n_nodes
    inc_pos = np.zeros((n, n))
    inc_neg = np.zeros((n, n))
    weights = np.zeros((n, n))
    for (i, j), t in network.trust.items():
        profile = expected_rates(t)
        inc_pos[i, j] = math.log(profile.detection_rate) - math.log(
            profile.false_alarm_rate
        )
        inc_neg[i, j] = math.log1p(-profile.detection_rate) - math.log1p(
            -profile.false_alarm_rate
        )
        weights[i, j] = trust_weight(profile)
    return inc_pos, inc_neg, weights


def _consult_order(network: Network, weights: np.ndarray, order: str) -> np.ndarray:
    """Ordered acquaintance ids per observer, shape (n, n-1).

    trust: descending believed weight, ties by node id.  list: ascending
    node id.  random: list order here; the scenario engine permutes
    per scenario.
    """
    n = network.config.n_nodes
    out = np.empty((n, n - 1), dtype=np.int64)
    for i in range(n):
        others = np.array(network.acquaintances(i), dtype=np.int64)
        if order == "trust":
            key = np.lexsort((others, -weights[i, others]))
            out[i] = others[key]
        elif order in ("list", "random"):
            out[i] = others
        else:
            raise ValueError("order must be 'trust', 'list' or 'random'")
    return out


def _fallback_log_threshold(pi0: float, costs: SequentialCosts) -> float:
    """Log-ratio value above which the exhaustion fallback alarms (strict)."""
    t = costs.fallback_threshold
    if pi0 <= 0.0:
        return -math.inf
    if pi0 >= 1.0:
        return math.inf
    return math.log(pi0) - math.log1p(-pi0) + math.log1p(-t) - math.log(t)


def run_consultation(
    network: Network,
    node_id: int,
    scenario: Scenario,
    scheme: str,
    rng: np.random.Generator,
    order: str = "trust",
) -> tuple[Hypothesis, int]:
    """One consultation round for a single decider node.

    The SPRT scheme consults sequentially in the chosen order and may stop
    early; the baselines always poll the full acquaintance list.  Returns
    the decision and the number of feedback messages consumed.
    """
    if scheme not in _SCHEMES:
        raise ValueError(f"scheme must be one of {_SCHEMES}")
    config = network.config
    believed = {
        j: expected_rates(network.trust[(node_id, j)])
        for j in network.acquaintances(node_id)
    }
    if order == "trust":
        ordered = sorted(
            believed, key=lambda j: (-trust_weight(believed[j]), j)
        )
    elif order == "list":
        ordered = sorted(believed)
    elif order == "random":
        ordered = list(believed)
        rng.shuffle(ordered)
    else:
        raise ValueError("order must be 'trust', 'list' or 'random'")

    def answer(peer_id: int) -> int:
        return sample_feedback(network.models[peer_id], scenario, rng)

    if scheme == "sprt":
        result = run_sprt(
            [(j, believed[j]) for j in ordered],
            answer,
            thresholds_from_targets(config.targets),
            SequentialCosts(
                false_alarm=config.costs.false_alarm, miss=config.costs.miss
            ),
            config.priors.no_intrusion,
        )
        return result.decision, result.n_consulted
    feedbacks = [answer(j) for j in ordered]
    if scheme == "simple":
        return simple_average(feedbacks, 0.5), len(feedbacks)
    weights = [trust_weight(believed[j]) for j in ordered]
    return weighted_average(feedbacks, weights, 0.5), len(feedbacks)


@dataclass(frozen=True)
class ResultRow:
    """One CSV row: sweep coordinates plus named metric columns."""

    experiment: str
    param: str
    value: float
    scheme: str
    metrics: tuple[tuple[str, float], ...]


def _mean_se(per_rep: np.ndarray) -> tuple[float, float]:
    mean = float(np.mean(per_rep))
    if per_rep.size < 2:
        return mean, 0.0
    return mean, float(np.std(per_rep, ddof=1) / math.sqrt(per_rep.size))


# ---------------------------------------------------------------------------
# feedback-rate sweeps (figs 2 and 3)


def _peer_rate_point(
    config: ExperimentConfig,
    expertise: float,
    tau_p: float,
    code: int,
    point: int,
    samples_per_class: int = 200,
) -> tuple[tuple[float, float], tuple[float, float]]:
    """Sampled FP/FN rates of the peer model, pooled over nodes per rep."""
    n = config.n_nodes
    model = PeerModel(node_id=0, expertise=expertise, threshold=tau_p)
    clean = Scenario(difficulty=config.difficulty, intrusion=False)
    hit = Scenario(difficulty=config.difficulty, intrusion=True)
    fp = np.empty(config.replications)
    fn = np.empty(config.replications)
    for rep in range(config.replications):
        rng = _stream(config.seed, code, _STREAM_SCENARIO, point, rep)
        if expertise >= 1.0 or config.difficulty <= 0.0:
            assess_clean = np.zeros((n, samples_per_class))
            assess_hit = np.ones((n, samples_per_class))
        else:
            a0, b0 = shape_params(model, clean)
            a1, b1 = shape_params(model, hit)
            assess_clean = rng.beta(a0, b0, (n, samples_per_class))
            assess_hit = rng.beta(a1, b1, (n, samples_per_class))
        fp[rep] = float(np.mean(assess_clean > tau_p))
        fn[rep] = float(np.mean(assess_hit <= tau_p))
    return _mean_se(fp), _mean_se(fn)


def _rate_sweep_rows(
    config: ExperimentConfig, experiment: str, param: str
) -> list[ResultRow]:
    code = _EXP_CODE[experiment]
    rows = []
    for point, x in enumerate(v / 10.0 for v in range(1, 10)):
        if experiment == "fig2":
            expertise, tau_p = x, config.tau_p[0]
        else:
            expertise, tau_p = config.expertise[0], x
        (fp, fp_se), (fn, fn_se) = _peer_rate_point(
            config, expertise, tau_p, code, point
        )
        rows.append(
            ResultRow(
                experiment=experiment,
                param=param,
                value=x,
                scheme="peer",
                metrics=(
                    ("fp_rate", fp),
                    ("fp_rate_se", fp_se),
                    ("fn_rate", fn),
                    ("fn_rate_se", fn_se),
                ),
            )
        )
    return rows


# ---------------------------------------------------------------------------
# consultation sweeps (figs 4, 5 and 6)


@dataclass
class _ScenarioBatch:
    truth: np.ndarray  # bool (s,)
    deciders: np.ndarray  # int (s,)
    peer_idx: np.ndarray  # int (s, n-1), consultation order per scenario
    bits: np.ndarray  # uint8 (s, n-1), feedback of those peers
    inc_pos: np.ndarray  # float (s, n-1)
    inc_neg: np.ndarray  # float (s, n-1)
    weights: np.ndarray  # float (s, n-1)


def _draw_batch(
    network: Network,
    rng: np.random.Generator,
    n_scenarios: int,
    order: str,
    inc_pos: np.ndarray,
    inc_neg: np.ndarray,
    weights: np.ndarray,
    ordered: np.ndarray,
) -> _ScenarioBatch:
    """Draw one replication's paired scenarios.

    All schemes consume the same feedback bits; the SPRT simply reads a
    prefix.  Deciders rotate round-robin so every node's trust table is
    exercised.
    """
    config = network.config
    n = config.n_nodes
    truth = rng.random(n_scenarios) < config.priors.intrusion
    deciders = np.arange(n_scenarios, dtype=np.int64) % n
    peer_idx = ordered[deciders]
    if order == "random":
        shuffle_keys = rng.random(peer_idx.shape)
        take = np.argsort(shuffle_keys, axis=1)
        peer_idx = np.take_along_axis(peer_idx, take, axis=1)
    rates = np.array(
        [
            feedback_tail_rates(m.expertise, config.difficulty, m.threshold)
            for m in network.models
        ]
    )
    p_alarm = np.where(truth[:, None], rates[peer_idx, 1], rates[peer_idx, 0])
    bits = (rng.random(peer_idx.shape) < p_alarm).astype(np.uint8)
    rows = deciders[:, None]
    return _ScenarioBatch(
        truth=truth,
        deciders=deciders,
        peer_idx=peer_idx,
        bits=bits,
        inc_pos=inc_pos[rows, peer_idx],
        inc_neg=inc_neg[rows, peer_idx],
        weights=weights[rows, peer_idx],
    )


@dataclass
class _SchemeStats:
    fp: float
    tp: float
    cost: float
    consultations: float


def _score_decisions(
    decisions: np.ndarray,
    truth: np.ndarray,
    n_used: np.ndarray,
    costs: CostMatrix,
) -> _SchemeStats:
    alarms = decisions.astype(bool)
    clean = ~truth
    n_clean = int(clean.sum())
    n_intr = int(truth.sum())
    fp = float((alarms & clean).sum() / max(n_clean, 1))
    tp = float((alarms & truth).sum() / max(n_intr, 1))
    per_scenario = np.where(
        truth,
        np.where(alarms, costs.true_alarm, costs.miss),
        np.where(alarms, costs.false_alarm, costs.true_clear),
    )
    return _SchemeStats(
        fp=fp,
        tp=tp,
        cost=float(per_scenario.mean()),
        consultations=float(n_used.mean()),
    )


def _sprt_batch_decisions(
    batch: _ScenarioBatch,
    config: ExperimentConfig,
    costs: CostMatrix,
    truncate: int | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    thresholds = thresholds_from_targets(config.targets)
    z_star = _fallback_log_threshold(
        config.priors.no_intrusion,
        SequentialCosts(false_alarm=costs.false_alarm, miss=costs.miss),
    )
    stop = batch.bits.shape[1] if truncate is None else truncate
    return consult_paths(
        np.ascontiguousarray(batch.bits[:, :stop]),
        np.ascontiguousarray(batch.inc_pos[:, :stop]),
        np.ascontiguousarray(batch.inc_neg[:, :stop]),
        thresholds.log_lower,
        thresholds.log_upper,
        z_star,
    )


def _baseline_batch_decisions(
    batch: _ScenarioBatch, scheme: str
) -> tuple[np.ndarray, np.ndarray]:
    full = batch.bits.shape[1]
    n_used = np.full(batch.bits.shape[0], full, dtype=np.int64)
    if scheme == "simple":
        score = batch.bits.mean(axis=1)
    else:
        score = (batch.weights * batch.bits).sum(axis=1) / batch.weights.sum(axis=1)
    return (score > 0.5).astype(np.uint8), n_used


def _consultation_sweep_rows(
    config: ExperimentConfig, experiment: str, order: str
) -> list[ResultRow]:
    """Shared engine for figs 4, 5 and 6."""
    code = _EXP_CODE[experiment]
    n_scenarios = 200
    if experiment == "fig4":
        points = [(i, v / 10.0) for i, v in enumerate(range(1, 10))]
        param = "tau_p"
    elif experiment == "fig5":
        points = [(i, float(c)) for i, c in enumerate(range(1, 9))]
        param = "miss_cost"
    else:
        points = [(i, float(k)) for i, k in enumerate(range(1, config.n_nodes))]
        param = "max_consultations"

    per_point: dict[int, dict[str, list[_SchemeStats]]] = {
        i: {s: [] for s in _SCHEMES} for i, _ in points
    }
    shared_stream = experiment == "fig5"
    for rep in range(config.replications):
        if shared_stream:
            # one network + one scenario batch per replication, reused at
            # every sweep point so cost curves differ only through decisions
            network = bootstrap_trust(
                build_network(config), rep=rep, experiment=code, point=0
            )
            inc_pos, inc_neg, weights = _believed_arrays(network)
            ordered = _consult_order(network, weights, order)
            rng = _stream(config.seed, code, _STREAM_SCENARIO, rep)
            batch = _draw_batch(
                network, rng, n_scenarios, order, inc_pos, inc_neg, weights, ordered
            )
        for point, x in points:
            if experiment == "fig4":
                point_config = replace(config, tau_p=(x,) * config.n_nodes)
            else:
                point_config = config
            if not shared_stream:
                network = bootstrap_trust(
                    build_network(point_config), rep=rep, experiment=code, point=point
                )
                inc_pos, inc_neg, weights = _believed_arrays(network)
                ordered = _consult_order(network, weights, order)
                rng = _stream(config.seed, code, _STREAM_SCENARIO, point, rep)
                batch = _draw_batch(
                    network,
                    rng,
                    n_scenarios,
                    order,
                    inc_pos,
                    inc_neg,
                    weights,
                    ordered,
                )
            costs = point_config.costs
            truncate = None
            if experiment == "fig5":
                costs = replace(costs, miss=x)
            elif experiment == "fig6":
                truncate = int(x)
            dec, used = _sprt_batch_decisions(batch, point_config, costs, truncate)
            per_point[point]["sprt"].append(
                _score_decisions(dec, batch.truth, used, costs)
            )
            if experiment != "fig6":
                for scheme in ("simple", "weighted"):
                    dec, used = _baseline_batch_decisions(batch, scheme)
                    per_point[point][scheme].append(
                        _score_decisions(dec, batch.truth, used, costs)
                    )

    rows = []
    emitted_schemes = ("sprt",) if experiment == "fig6" else _SCHEMES
    for point, x in points:
        for scheme in emitted_schemes:
            stats = per_point[point][scheme]
            fp, fp_se = _mean_se(np.array([s.fp for s in stats]))
            tp, tp_se = _mean_se(np.array([s.tp for s in stats]))
            cost, cost_se = _mean_se(np.array([s.cost for s in stats]))
            used, used_se = _mean_se(np.array([s.consultations for s in stats]))
            rows.append(
                ResultRow(
                    experiment=experiment,
                    param=param,
                    value=x,
                    scheme=scheme,
                    metrics=(
                        ("fp_rate", fp),
                        ("fp_rate_se", fp_se),
                        ("tp_rate", tp),
                        ("tp_rate_se", tp_se),
                        ("avg_cost", cost),
                        ("avg_cost_se", cost_se),
                        ("avg_consultations", used),
                        ("avg_consultations_se", used_se),
                    ),
                )
            )
    return rows


# ---------------------------------------------------------------------------
# stopping-time sweep (fig 7)


def population_for(
    expertise: float, difficulty: float, tau_p: float
) -> SymmetricPeerPopulation:
    """Homogeneous answer distribution of the peer model at these parameters."""
    p_f, p_d = feedback_tail_rates(expertise, difficulty, tau_p)
    return SymmetricPeerPopulation(theta0=1.0 - p_f, theta1=1.0 - p_d)


def _fig7_rows(config: ExperimentConfig) -> list[ResultRow]:
    code = _EXP_CODE["fig7"]
    thresholds = thresholds_from_targets(config.targets)
    walks_per_rep = 40
    rows = []
    for point, x in enumerate(v / 10.0 for v in range(1, 10)):
        pop = population_for(x, config.difficulty, config.tau_p[0])
        theory = acquaintance_bound(config.targets, pop)
        means = np.empty(config.replications)
        for rep in range(config.replications):
            rng = _stream(config.seed, code, _STREAM_WALK, point, rep)
            truth = rng.random(walks_per_rep) < config.priors.intrusion
            n_intr = int(truth.sum())
            steps = []
            if walks_per_rep - n_intr:
                _, s0 = simulate_stopping(
                    pop, thresholds, False, walks_per_rep - n_intr, rng
                )
                steps.append(s0)
            if n_intr:
                _, s1 = simulate_stopping(pop, thresholds, True, n_intr, rng)
                steps.append(s1)
            means[rep] = float(np.concatenate(steps).mean())
        sim, sim_se = _mean_se(means)
        rows.append(
            ResultRow(
                experiment="fig7",
                param="expertise",
                value=x,
                scheme="sprt",
                metrics=(
                    ("sim_mean_n", sim),
                    ("sim_mean_n_se", sim_se),
                    ("theory_n", float(theory)),
                ),
            )
        )
    return rows


def run_experiment(
    experiment: str, config: ExperimentConfig, order: str = "trust"
) -> list[ResultRow]:
    """Run one figure's sweep and return its rows.

    order selects the SPRT consultation order: 'trust' (descending believed
    weight, the default), 'list' (node-id order) or 'random' (per-scenario
    shuffle).
    """
    if experiment == "fig2":
        return _rate_sweep_rows(config, "fig2", "expertise")
    if experiment == "fig3":
        return _rate_sweep_rows(config, "fig3", "tau_p")
    if experiment in ("fig4", "fig5", "fig6"):
        return _consultation_sweep_rows(config, experiment, order)
    if experiment == "fig7":
        return _fig7_rows(config)
    raise ValueError(f"unknown experiment id {experiment!r}")


# ---------------------------------------------------------------------------
# CSV


def _format_number(value: float) -> str:
    return f"{value:.6g}"


def emit_csv(rows: Sequence[ResultRow], destination) -> None:
    """Write rows as CSV: UTF-8, LF endings, 6 significant digits.

    destination is a path or a text file object.  All rows must share one
    metric schema; the column order is the metric order of the first row.
    """
    rows = list(rows)
    if not rows:
        raise ValueError("no rows to write")
    metric_names = [name for name, _ in rows[0].metrics]
    for row in rows:
        if [name for name, _ in row.metrics] != metric_names:
            raise ValueError("rows disagree on metric columns")
    lines = ["experiment,param,value,scheme," + ",".join(metric_names)]
    for row in rows:
        cells = [row.experiment, row.param, _format_number(row.value), row.scheme]
        cells.extend(_format_number(v) for _, v in row.metrics)
        lines.append(",".join(cells))
    text = "\n".join(lines) + "\n"
    if isinstance(destination, (str, bytes)):
        with open(destination, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    elif isinstance(destination, io.TextIOBase) or hasattr(destination, "write"):
        destination.write(text)
    else:
        raise TypeError("destination must be a path or a writable text object")
