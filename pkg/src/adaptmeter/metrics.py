"""Variability metrics over an activity tree.

Each join-point activity carries a variability value VV (how many
advice attachments it has) and a variability degree VD = VV / R, where
the reference value R is the per-activity attachment maximum (default
3: before, around, after). Structured activities fold the degrees of
their members:

    switch, pick            VD = sum over branches of VD(branch) * (1/n),
                            n = number of branches (every branch counts:
                            a join-point-free branch still occupies its
                            1/n share of execution probability)
    sequence, flow, while   VD = mean of VD over eligible children,
                            n = number of eligible children (inert
                            scaffolding such as a bare assign does not
                            dilute the mean); n = 0 gives VD = 0

The process adaptability metric PAM is the VD of the root activity.

All arithmetic uses exact rationals (fractions.Fraction); nothing is
rounded before a report is rendered. The recursive aggregation is
linear in the per-join-point degrees, which `linear_weight_oracle`
exploits as an independent cross-check: PAM equals the weight of each
join point (the product of 1/n over its ancestors) times its VD,
summed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotAJoinPoint, ReferenceTooSmall
from .matching import VariabilityProfile
from .model import (
    Activity,
    ActivityPath,
    AnalysisConfig,
    BRANCHING_KINDS,
    ProcessModel,
    is_eligible_child,
    is_join_point,
    iter_activities,
)


@dataclass(frozen=True)
class NodeVD:
    """Per-node metric result.

    ``vv`` is set on join points only; ``n_used`` is the divisor a
    structured node applied (branch count, or eligible-child count).
    """

    path: ActivityPath
    kind: str
    vd: Fraction
    vv: int | None = None
    n_used: int | None = None
    children: tuple["NodeVD", ...] = ()

    @property
    def join_point(self) -> bool:
        return self.vv is not None

    def walk(self):
        """Yield this node and every descendant in pre-order."""
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass(frozen=True)
class MetricsResult:
    process_name: str
    root: NodeVD
    pam: Fraction
    config_used: AnalysisConfig
    warnings: tuple[str, ...] = ()


def variability_value(profile: VariabilityProfile, path: ActivityPath, config: AnalysisConfig) -> int:
    """Number of variabilities at a join point, under the configured count mode.

    ``set`` counts distinct advice types; ``raw-clamped`` counts every
    binding but clamps at the reference value.
    """
    if path.kind not in config.join_point_kinds:
        raise NotAJoinPoint(f"{path} is a <{path.kind}>, which cannot carry advice under this config")
    if config.count_mode == "set":
        return len(profile.entries.get(path, frozenset()))
    total = sum(profile.raw_counts.get(path, {}).values())
    return min(total, config.reference_value)


def variability_degree(vv: int, reference_value: int) -> Fraction:
    """Normalise a variability value into [0, 1]: VD = VV / R, exactly."""
    if vv > reference_value:
        raise ReferenceTooSmall(f"variability value {vv} exceeds reference value {reference_value}")
    return Fraction(vv, reference_value)


def _divisor(activity: Activity, config: AnalysisConfig) -> int:
    if activity.kind in BRANCHING_KINDS:
        return len(activity.children)
    return sum(1 for child in activity.children if is_eligible_child(child, config))


def aggregate(
    activity: Activity, path: ActivityPath, profile: VariabilityProfile, config: AnalysisConfig
) -> NodeVD:
    """Recursively compute the VD tree rooted at one activity."""
    if activity.is_basic:
        if is_join_point(activity, config):
            vv = variability_value(profile, path, config)
            return NodeVD(path, activity.kind, variability_degree(vv, config.reference_value), vv=vv)
        return NodeVD(path, activity.kind, Fraction(0))
    children = tuple(
        aggregate(child, path.child(child.kind, index), profile, config)
        for index, child in enumerate(activity.children)
    )
    n = _divisor(activity, config)
    # Ineligible children aggregate to zero, so summing all of them
    # equals summing the eligible ones; only the divisor differs.
    total = sum((child.vd for child in children), Fraction(0))
    vd = total / n if n else Fraction(0)
    return NodeVD(path, activity.kind, vd, n_used=n, children=children)


def process_adaptability(
    process: ProcessModel, profile: VariabilityProfile, config: AnalysisConfig
) -> MetricsResult:
    """Evaluate the whole process: PAM is the root activity's VD."""
    root = aggregate(process.root, ActivityPath.root(process.root.kind), profile, config)
    return MetricsResult(
        process_name=process.name,
        root=root,
        pam=root.vd,
        config_used=config,
        warnings=profile.warnings,
    )


def join_point_weights(process: ProcessModel, config: AnalysisConfig) -> dict[ActivityPath, Fraction]:
    """Weight of each join point: the product of 1/n over its ancestors.

    A join point's weight is how much one unit of its VD moves the
    process result. Weights use the same divisors as aggregation, and
    every ancestor of a join point has n >= 1 by construction.
    """
    nodes = dict(iter_activities(process))
    weights: dict[ActivityPath, Fraction] = {}
    for path, activity in nodes.items():
        if not is_join_point(activity, config):
            continue
        weight = Fraction(1)
        for ancestor in path.ancestors():
            weight /= _divisor(nodes[ancestor], config)
        weights[path] = weight
    return weights


def linear_weight_oracle(
    process: ProcessModel, profile: VariabilityProfile, config: AnalysisConfig
) -> Fraction:
    """Non-recursive PAM: sum of weight(p) * VD(p) over all join points.

    Must agree exactly with `process_adaptability`; kept as a separate
    computation path for cross-checking.
    """
    total = Fraction(0)
    for path, weight in join_point_weights(process, config).items():
        vv = variability_value(profile, path, config)
        total += weight * variability_degree(vv, config.reference_value)
    return total
