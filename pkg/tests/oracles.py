"""Deliberately naive reference implementations used as test oracles.

Everything here recomputes from first principles with plain ordered double
loops: pairwise distances come from the raw signature tuples, kernels from
math.exp, entropies from explicit count loops. Nothing imports the
production kernels or reuses cached matrices, so agreement between these
oracles and the production paths is a real cross-check.
"""

from __future__ import annotations

import math


def gower(sig_a, sig_b) -> float:
    total = len(sig_a.categorical) + len(sig_a.numeric)
    acc = 0.0
    for x, y in zip(sig_a.categorical, sig_b.categorical):
        if x != y:
            acc += 1.0
    for x, y in zip(sig_a.numeric, sig_b.numeric):
        acc += abs(x - y)
    return acc / total


def weight(element, mode, config) -> float:
    r = math.exp(-config.mission_time / element.mtbf)
    a = element.availability
    if mode == "none":
        return 1.0
    if mode == "availability":
        return a if a >= config.a_min else 0.0
    if mode == "reliability":
        return r if r >= config.r_min else 0.0
    return a * r if (a >= config.a_min and r >= config.r_min) else 0.0


def _realizers(instance, function_id):
    return [el for el in instance.elements if function_id in el.supports]


def fss_baseline(instance, function_id, delta) -> float:
    els = _realizers(instance, function_id)
    n = len(els)
    if n <= 1:
        return 0.0
    total = 0
    for i in range(n):
        for j in range(n):
            if i != j and gower(els[i].signature, els[j].signature) > delta:
                total += 1
    return total / (n * (n - 1))


def fss_weighted(instance, function_id, config) -> float:
    els = _realizers(instance, function_id)
    n = len(els)
    if n <= 1:
        return 0.0
    mode = config.weight_mode.value
    acc = 0.0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            d = gower(els[i].signature, els[j].signature)
            if d > delta_of(config):
                w_pair = min(els[i].capacity, els[j].capacity) / (1.0 + abs(els[i].load - els[j].load)) * d
                acc += w_pair * weight(els[i], mode, config) * weight(els[j], mode, config)
    return acc / (n * (n - 1))


def delta_of(config) -> float:
    return config.delta


def kernel(p_i, p_j, sigma) -> float:
    sq = sum((a - b) ** 2 for a, b in zip(p_i, p_j))
    return math.exp(-sq / (2.0 * sigma * sigma))


def separation(s_i, s_j) -> float:
    dot = sum(a * b for a, b in zip(s_i, s_j))
    ni = math.sqrt(sum(a * a for a in s_i))
    nj = math.sqrt(sum(b * b for b in s_j))
    return min(1.0, max(0.0, 1.0 - dot / (ni * nj)))


def arq_soft(portfolio, sigma) -> float:
    n = len(portfolio)
    if n <= 1:
        return 0.0
    acc = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                acc += kernel(portfolio[i].performance, portfolio[j].performance, sigma) * separation(
                    portfolio[i].structure, portfolio[j].structure
                )
    return acc / (n * (n - 1))


def arq_hard(portfolio, epsilon, delta, sigma) -> float:
    n = len(portfolio)
    if n <= 1:
        return 0.0
    count = 0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            k = kernel(portfolio[i].performance, portfolio[j].performance, sigma)
            d = separation(portfolio[i].structure, portfolio[j].structure)
            if k >= epsilon and d > delta:
                count += 1
    return count / (n * (n - 1))


def propagate(instance, failed_ids) -> dict[str, bool]:
    """Upward propagation recomputed directly from the dependency rows."""
    failed = set(failed_ids)
    active: dict[str, bool] = {}
    l1 = [instance.elements[p] for p in instance.layer_positions("L1")]
    l2 = [instance.elements[p] for p in instance.layer_positions("L2")]
    l3 = [instance.elements[p] for p in instance.layer_positions("L3")]
    for el in l1:
        active[el.id] = el.id not in failed
    for row, el in enumerate(l2):
        deps = [l1[col].id for col in range(len(l1)) if instance.topology.b12[row, col]]
        ok = True if not deps else any(active[d] for d in deps)
        active[el.id] = el.id not in failed and ok
    for row, el in enumerate(l3):
        deps = [l2[col].id for col in range(len(l2)) if instance.topology.b23[row, col]]
        ok = True if not deps else any(active[d] for d in deps)
        active[el.id] = el.id not in failed and ok
    return active


def admissible_distinct(instance, layer, active, config) -> list[str]:
    els = sorted(
        (instance.elements[p] for p in instance.layer_positions(layer)), key=lambda e: e.id
    )
    kept = []
    for el in els:
        if not active[el.id]:
            continue
        if weight(el, "joint", config) <= 0.0:
            continue
        if all(gower(el.signature, other.signature) > config.delta for other in kept):
            kept.append(el)
    return [el.id for el in kept]


def mldi_baseline(instance, active, config) -> float:
    taus = []
    for layer in ("L1", "L2", "L3"):
        size = len(instance.layer_positions(layer))
        taus.append(len(admissible_distinct(instance, layer, active, config)) / size)
    return sum(taus) / len(taus)


def layer_entropy_norm(instance, layer, active, m) -> float:
    counts = {fid: 0 for fid in instance.functions}
    for p in instance.layer_positions(layer):
        el = instance.elements[p]
        if active[el.id]:
            for fid in el.supports:
                counts[fid] += 1
    total = sum(counts.values())
    if total == 0 or m <= 1:
        return 0.0
    h = 0.0
    for c in counts.values():
        if c:
            h -= (c / total) * math.log(c / total)
    return h / math.log(m)


def mldi_enhanced(instance, active, m) -> float:
    vals = [layer_entropy_norm(instance, layer, active, m) for layer in ("L1", "L2", "L3")]
    return sum(vals) / len(vals)
