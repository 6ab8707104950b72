"""Selector evaluation and the advice-binding profile.

Evaluating a pointcut selector against a process yields activity paths;
binding a set of aspects turns those matches into a VariabilityProfile,
the map from join-point path to attached advice types that the metrics
engine consumes. Matches on activities that cannot carry advice are
collected as warnings rather than errors, as are selectors that match
nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .model import (
    ADVICE_TYPES,
    Activity,
    ActivityPath,
    AnalysisConfig,
    ProcessModel,
    is_join_point,
    iter_activities,
    resolve_path,
)
from .parsing import Aspect
from .selectors import PointcutSelector, SelectorStep


@dataclass(frozen=True)
class JoinPointBinding:
    """One advice attachment: which aspect/pointcut bound which advice type where."""

    aspect_name: str
    pointcut_name: str
    path: ActivityPath
    advice_type: str


@dataclass(frozen=True)
class VariabilityProfile:
    """Advice attachments per join point.

    ``entries`` maps each bound path to the set of advice types present
    there; ``raw_counts`` keeps per-type multiplicities for reporting and
    for the raw-clamped count mode; ``bindings`` is the provenance.
    """

    entries: Mapping[ActivityPath, frozenset[str]]
    bindings: tuple[JoinPointBinding, ...]
    raw_counts: Mapping[ActivityPath, Mapping[str, int]]
    warnings: tuple[str, ...] = ()

    def advice_types(self, path: ActivityPath) -> frozenset[str]:
        return self.entries.get(path, frozenset())

    @classmethod
    def empty(cls) -> "VariabilityProfile":
        return cls({}, (), {})

    @classmethod
    def from_assignments(cls, assignments: Iterable[tuple[ActivityPath, str]]) -> "VariabilityProfile":
        """Build a profile directly from (path, advice type) pairs.

        Used when attachments are chosen programmatically (sweeps, tests)
        rather than matched from aspect files; provenance is synthetic.
        """
        bindings = tuple(
            JoinPointBinding("direct", f"slot{index}", path, advice_type)
            for index, (path, advice_type) in enumerate(assignments)
        )
        return cls._from_bindings(bindings, ())

    @classmethod
    def _from_bindings(
        cls, bindings: Sequence[JoinPointBinding], warnings: tuple[str, ...]
    ) -> "VariabilityProfile":
        ordered = sorted(
            bindings,
            key=lambda b: (b.path.order_key, b.aspect_name, b.pointcut_name, ADVICE_TYPES.index(b.advice_type)),
        )
        entries: dict[ActivityPath, frozenset[str]] = {}
        raw_counts: dict[ActivityPath, dict[str, int]] = {}
        for binding in ordered:
            entries[binding.path] = entries.get(binding.path, frozenset()) | {binding.advice_type}
            counts = raw_counts.setdefault(binding.path, {})
            counts[binding.advice_type] = counts.get(binding.advice_type, 0) + 1
        return cls(entries, tuple(ordered), raw_counts, warnings)


def _step_matches_activity(step: SelectorStep, activity: Activity) -> bool:
    if step.element != activity.kind:
        return False
    for attribute, value in step.predicates:
        actual = activity.name if attribute == "name" else activity.attributes.get(attribute)
        if actual != value:
            return False
    return True


def _step_matches_process(step: SelectorStep, process: ProcessModel) -> bool:
    if step.element != "process":
        return False
    for attribute, value in step.predicates:
        actual = process.name if attribute == "name" else process.attributes.get(attribute)
        if actual != value:
            return False
    return True


def match_selector(selector: PointcutSelector, process: ProcessModel) -> list[ActivityPath]:
    """All activities reached by the selector, in pre-order.

    Each step is a descendant-or-self search from the previous step's
    matches; the first step searches from the document root, which a
    ``process`` step may match itself. A final match on the document
    root has no activity path and is dropped from the result.
    """
    nodes = list(iter_activities(process))
    # None stands for the document root (the <process> element).
    contexts: list[ActivityPath | None] = [None]
    for step in selector.steps:
        matched: dict[ActivityPath | None, None] = {}
        for context in contexts:
            if context is None:
                if _step_matches_process(step, process):
                    matched.setdefault(None)
                for path, activity in nodes:
                    if _step_matches_activity(step, activity):
                        matched.setdefault(path)
            else:
                for path, activity in nodes:
                    if (path == context or context.is_ancestor_of(path)) and _step_matches_activity(step, activity):
                        matched.setdefault(path)
        contexts = list(matched)
        if not contexts:
            break
    return sorted((path for path in contexts if path is not None), key=lambda p: p.order_key)


def bind_aspects(
    process: ProcessModel, aspects: Sequence[Aspect], config: AnalysisConfig
) -> VariabilityProfile:
    """Match every pointcut of every active aspect and assemble the profile.

    Each matched join point yields one binding carrying the aspect's
    advice type. Disabled aspects are skipped unless the config says
    otherwise; matches on non-join-point activities become warnings.
    """
    bindings: list[JoinPointBinding] = []
    warnings: list[str] = []
    for aspect in aspects:
        if not aspect.enabled and not config.include_disabled_aspects:
            continue
        for pointcut in aspect.pointcuts:
            paths = match_selector(pointcut.selector, process)
            if not paths:
                warnings.append(f"aspect '{aspect.name}' pointcut '{pointcut.name}': selector matched no activities")
                continue
            for path in paths:
                activity = resolve_path(process, path)
                if is_join_point(activity, config):
                    bindings.append(JoinPointBinding(aspect.name, pointcut.name, path, aspect.advice_type))
                else:
                    warnings.append(
                        f"aspect '{aspect.name}' pointcut '{pointcut.name}': "
                        f"match at {path} is not a join point (<{activity.kind}>); skipped"
                    )
    return VariabilityProfile._from_bindings(bindings, tuple(warnings))
